"""Lattice document ingestion.

The on-disk format is a JSON object with keys `gram` (array of arrays of
integers), `ample` (array of integers) and optionally `certificates`
(array of {"modulus": int, "residues": [int]}).  Loading validates the
lattice, validates the ample class as a polarization, and machine-verifies
every congruence certificate against the Gram matrix before it can be
trusted by the dichotomy classifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .cone import CongruenceCertificate, verify_certificate
from .errors import BadInput, CertificateInvalid
from .lattice import GramLattice, Polarization, validate_polarization


@dataclass(frozen=True)
class LatticeDocument:
    lattice: GramLattice
    polarization: Polarization
    certificates: tuple[CongruenceCertificate, ...]


def _require_int_list(values, what: str) -> list[int]:
    if not isinstance(values, list) or not values:
        raise BadInput(f"{what} must be a nonempty array of integers")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise BadInput(f"{what} must contain integers only")
        out.append(v)
    return out


def read_raw(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read lattice document {path}: {exc}") from exc
    if not isinstance(data, dict) or "gram" not in data or "ample" not in data:
        raise BadInput("lattice document needs `gram` and `ample` fields")
    return data


def parse_gram(data: dict) -> GramLattice:
    gram = data["gram"]
    if not isinstance(gram, list) or not gram:
        raise BadInput("`gram` must be a nonempty array of arrays")
    rows = [_require_int_list(row, "`gram` row") for row in gram]
    if any(len(row) != len(rows) for row in rows):
        raise BadInput("`gram` must be square")
    return GramLattice.from_rows(rows)


def parse_certificates(data: dict) -> tuple[CongruenceCertificate, ...]:
    raw = data.get("certificates", [])
    if not isinstance(raw, list):
        raise BadInput("`certificates` must be an array")
    certs = []
    for entry in raw:
        if (not isinstance(entry, dict) or "modulus" not in entry
                or "residues" not in entry):
            raise BadInput("certificate needs `modulus` and `residues`")
        modulus = entry["modulus"]
        if isinstance(modulus, bool) or not isinstance(modulus, int) or modulus < 2:
            raise BadInput("certificate modulus must be an integer >= 2")
        residues = _require_int_list(entry["residues"], "certificate residues")
        certs.append(CongruenceCertificate(modulus=modulus,
                                           residues=frozenset(residues)))
    return tuple(certs)


def parse_document(data: dict) -> LatticeDocument:
    lattice = parse_gram(data)
    ample = _require_int_list(data["ample"], "`ample`")
    pol = validate_polarization(lattice, ample)
    certs = parse_certificates(data)
    for cert in certs:
        if not verify_certificate(lattice, cert):
            raise CertificateInvalid(
                f"certificate mod {cert.modulus} with residues "
                f"{sorted(cert.residues)} is not implied by the Gram matrix")
    return LatticeDocument(lattice=lattice, polarization=pol,
                           certificates=certs)


def load_document(path: str | Path) -> LatticeDocument:
    return parse_document(read_raw(path))
