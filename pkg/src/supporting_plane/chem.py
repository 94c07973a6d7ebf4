"""Classify four-bonded carbons by whether their bonds admit a supporting plane.

Bond vectors point from the carbon to each neighbour.  When all four fit in
an open halfspace the carbon is labelled ``"separable"``; when the origin is
a nonnegative combination of them it is ``"enclosed"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .exact import ParseError, Scalar, Vec3, parse_decimal, to_exact
from .separability import InputError, Verdict, VectorSet, decide

# Single-bond covalent radii in Angstrom (Cordero et al. 2008; C is sp3).
COVALENT_RADII: Dict[str, Scalar] = {
    "H": Fraction("0.31"),
    "C": Fraction("0.76"),
    "N": Fraction("0.71"),
    "O": Fraction("0.66"),
    "F": Fraction("0.57"),
    "P": Fraction("1.07"),
    "S": Fraction("1.05"),
    "Cl": Fraction("1.02"),
    "Br": Fraction("1.20"),
    "I": Fraction("1.39"),
}

DEFAULT_BOND_SCALE = Fraction(23, 20)

LABELS = {True: "separable", False: "enclosed"}


class UnknownElementError(InputError):
    def __init__(self, symbol):
        super().__init__(f"no covalent radius for element {symbol!r}")
        self.symbol = symbol


@dataclass(frozen=True)
class Atom:
    element: str
    position: Vec3


@dataclass(frozen=True)
class Molecule:
    atoms: Tuple[Atom, ...]
    comment: str = ""

    def __len__(self):
        return len(self.atoms)


@dataclass(frozen=True)
class BondGraph:
    pairs: FrozenSet[Tuple[int, int]]

    @classmethod
    def from_pairs(cls, pairs) -> "BondGraph":
        norm = set()
        for i, j in pairs:
            if i == j:
                raise ValueError(f"self-bond on atom {i}")
            norm.add((min(i, j), max(i, j)))
        return cls(frozenset(norm))

    def bonded(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.pairs

    def neighbors(self, i: int) -> List[int]:
        out = [b if a == i else a for a, b in self.pairs if i in (a, b)]
        return sorted(out)


@dataclass(frozen=True)
class CarbonClassification:
    atom_index: int
    neighbor_indices: Tuple[int, int, int, int]
    bond_vectors: Tuple[Vec3, ...]
    verdict: Verdict

    @property
    def label(self) -> str:
        return LABELS[self.verdict.separable]


@dataclass(frozen=True)
class SkippedCarbon:
    atom_index: int
    bond_count: int

    @property
    def reason(self) -> str:
        return f"carbon has {self.bond_count} bonds, classification needs exactly 4"


@dataclass
class CarbonReport:
    classified: List[CarbonClassification] = field(default_factory=list)
    skipped: List[SkippedCarbon] = field(default_factory=list)


def parse_xyz(text: str) -> Molecule:
    """Parse an XYZ file: count line, comment line, then ``sym x y z`` lines.

    Coordinates are read exactly.  Extra columns after z are ignored, as are
    trailing blank lines; anything else out of shape is a ParseError that
    carries the 1-based line number.
    """
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing atom count", line=1)
    try:
        count = int(lines[0].split()[0])
    except ValueError:
        raise ParseError(f"atom count {lines[0].strip()!r} is not an integer",
                         line=1) from None
    if count < 0:
        raise ParseError(f"negative atom count {count}", line=1)
    comment = lines[1] if len(lines) > 1 else ""
    atoms = []
    for n in range(count):
        lineno = n + 3
        if lineno > len(lines) or not lines[lineno - 1].strip():
            raise ParseError(f"expected {count} atoms, found {n}", line=lineno)
        fields = lines[lineno - 1].split()
        if len(fields) < 4:
            raise ParseError(f"atom line needs a symbol and three coordinates, "
                             f"got {len(fields)} fields", line=lineno)
        try:
            pos = tuple(parse_decimal(tok) for tok in fields[1:4])
        except ParseError as exc:
            exc.line = lineno
            raise
        atoms.append(Atom(fields[0], pos))
    extra = [i + 1 for i, ln in enumerate(lines[count + 2:], count + 2) if ln.strip()]
    if extra:
        raise ParseError(f"declared {count} atoms but found more lines",
                         line=extra[0])
    return Molecule(tuple(atoms), comment)


def load_radii(path) -> Dict[str, Scalar]:
    """Read a JSON object of element -> radius and merge it over the defaults."""
    with open(path) as fh:
        data = json.load(fh, parse_float=parse_decimal, parse_int=parse_decimal)
    if not isinstance(data, dict):
        raise ParseError("radii file must be a JSON object of element -> radius")
    radii = dict(COVALENT_RADII)
    for sym, r in data.items():
        r = to_exact(r)
        if r <= 0:
            raise InputError(f"radius for {sym!r} must be positive")
        radii[sym] = r
    return radii


def _sqdist(p, q):
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def infer_bonds(molecule: Molecule, scale=DEFAULT_BOND_SCALE,
                radii: Optional[Mapping[str, Scalar]] = None) -> BondGraph:
    """Bond atoms closer than ``scale * (r_i + r_j)``, compared squared."""
    radii = COVALENT_RADII if radii is None else radii
    scale = to_exact(scale)
    rs = []
    for atom in molecule.atoms:
        if atom.element not in radii:
            raise UnknownElementError(atom.element)
        rs.append(radii[atom.element])
    pairs = []
    atoms = molecule.atoms
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            limit = scale * (rs[i] + rs[j])
            if _sqdist(atoms[i].position, atoms[j].position) <= limit * limit:
                pairs.append((i, j))
    return BondGraph.from_pairs(pairs)


def classify_carbons(molecule: Molecule, bonds: BondGraph) -> CarbonReport:
    report = CarbonReport()
    for idx, atom in enumerate(molecule.atoms):
        if atom.element != "C":
            continue
        nbrs = bonds.neighbors(idx)
        if len(nbrs) != 4:
            report.skipped.append(SkippedCarbon(idx, len(nbrs)))
            continue
        origin = atom.position
        vecs = tuple(tuple(a - b for a, b in zip(molecule.atoms[n].position, origin))
                     for n in nbrs)
        verdict = decide(VectorSet(3, vecs), want_certificate=True)
        report.classified.append(
            CarbonClassification(idx, tuple(nbrs), vecs, verdict))
    return report
