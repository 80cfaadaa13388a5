"""Combinatorial degeneration data for a simple involution surface bundle.

A configuration records the kind of the quadratic cover (irreducible or
split everywhere), the named residue symbols, the degeneration curves
with their cover behavior and extension residues, and the crossing
points with their etale-local types.  ``validate`` enforces the
structural rules of that geometry plus four geometric-consistency
checks computed by linear algebra; configurations that pass feed the
Brauer-group computation.

Declaration order is semantic: curves, extensions, and points index the
bases of the computation in the order they are listed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

__all__ = [
    "CoverKind",
    "CurveType",
    "CoverBehavior",
    "PointType",
    "ResidueClass",
    "Extension",
    "Curve",
    "SingularPoint",
    "Configuration",
    "Diagnostic",
    "ValidationReport",
    "cores_residue",
    "extension_owner",
    "vp_basis",
    "vq_basis",
    "zr_basis",
    "validate",
]


class CoverKind(str, Enum):
    IRREDUCIBLE = "irreducible"
    SPLIT_EVERYWHERE = "split_everywhere"


class CurveType(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class CoverBehavior(str, Enum):
    INERT = "inert"
    SPLIT = "split"
    RAMIFIED = "ramified"


class PointType(str, Enum):
    I_II = "I_II"
    II_II = "II_II"
    III_II = "III_II"
    IV_II = "IV_II"
    IVP_IV = "IVp_IV"
    IVPP_IV = "IVpp_IV"


@dataclass(frozen=True)
class ResidueClass:
    """An element of the symbol-indexed GF(2) residue space.

    The empty set is the zero class; addition is symmetric difference.
    """

    symbols: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", frozenset(self.symbols))

    @classmethod
    def of(cls, *names: str) -> "ResidueClass":
        return cls(frozenset(names))

    @property
    def is_zero(self) -> bool:
        return not self.symbols

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        return ResidueClass(self.symbols ^ other.symbols)

    def render(self, symbol_order: Iterable[str] | None = None) -> str:
        """Human/DSL form: ``0`` or ``a+b`` in declared symbol order."""
        if self.is_zero:
            return "0"
        if symbol_order is None:
            names = sorted(self.symbols)
        else:
            order = list(symbol_order)
            missing = self.symbols - set(order)
            if missing:
                raise ValueError(f"symbols not in declared order list: {sorted(missing)}")
            names = [s for s in order if s in self.symbols]
        return "+".join(names)


ZERO = ResidueClass()


@dataclass(frozen=True)
class Extension:
    """A valuation of the function field of the cover lying over a curve."""

    id: str
    residue: ResidueClass = ZERO
    sheet: int | None = None


@dataclass(frozen=True)
class Curve:
    """A degeneration curve with its cover behavior and extension data."""

    id: str
    deg_type: CurveType
    cover_behavior: CoverBehavior
    extensions: tuple[Extension, ...]
    marking: str | None = None
    cores_residue_input: ResidueClass | None = None


@dataclass(frozen=True)
class SingularPoint:
    """A crossing point of two degeneration curves with its local type."""

    id: str
    incident: tuple[str, str]
    etype: PointType
    meets_marked: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "incident", tuple(self.incident))
        object.__setattr__(self, "meets_marked", frozenset(self.meets_marked))


@dataclass(frozen=True)
class Configuration:
    """Full degeneration data; list order fixes the computation's bases."""

    cover_kind: CoverKind
    symbols: tuple[str, ...] = ()
    curves: tuple[Curve, ...] = ()
    points: tuple[SingularPoint, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "points", tuple(self.points))


class Diagnostic(NamedTuple):
    code: str
    message: str
    subject: str


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Diagnostic, ...] = ()
    warnings: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors


# Allowed curve-type pairs at a crossing point, keyed by the sorted pair
# of degeneration types, valued by the admissible point types.
_ALLOWED_PAIRS: dict[tuple[str, str], tuple[PointType, ...]] = {
    ("I", "II"): (PointType.I_II,),
    ("II", "II"): (PointType.II_II,),
    ("II", "III"): (PointType.III_II,),
    ("II", "IV"): (PointType.IV_II,),
    ("IV", "IV"): (PointType.IVP_IV, PointType.IVPP_IV),
}


def cores_residue(cfg: Configuration, c: Curve) -> ResidueClass:
    """Residue of the corestriction along ``c``.

    Split curves: the sum of the two extension residues.  Inert and
    ramified curves: the user-supplied ``cores_residue_input``, defaulting
    to the zero class (the corestriction of a symbolic class is not
    computable from the symbols alone).
    """
    if c.cover_behavior is CoverBehavior.SPLIT:
        total = ZERO
        for ext in c.extensions:
            total = total + ext.residue
        return total
    if c.cores_residue_input is not None:
        return c.cores_residue_input
    return ZERO


def extension_owner(cfg: Configuration) -> dict[str, Curve]:
    """Map extension id -> owning curve (last declaration wins on clashes)."""
    owner: dict[str, Curve] = {}
    for c in cfg.curves:
        for ext in c.extensions:
            owner[ext.id] = c
    return owner


def vp_basis(cfg: Configuration) -> list[Extension]:
    """Extensions carrying nonzero residue, in declaration order.

    These index the coordinates of the space P.
    """
    return [ext for c in cfg.curves for ext in c.extensions if not ext.residue.is_zero]


def vq_basis(cfg: Configuration) -> list[Curve]:
    """Curves indexing the relation space Q, in declaration order.

    A curve qualifies when its corestriction residue vanishes and at
    least one of its extensions carries nonzero residue.
    """
    out = []
    for c in cfg.curves:
        if not cores_residue(cfg, c).is_zero:
            continue
        if any(not ext.residue.is_zero for ext in c.extensions):
            out.append(c)
    return out


def zr_basis(cfg: Configuration) -> list[SingularPoint]:
    """Points indexing the obstruction space R, in declaration order.

    All point types except I_II and IVpp_IV contribute.
    """
    keep = {PointType.II_II, PointType.III_II, PointType.IV_II, PointType.IVP_IV}
    return [p for p in cfg.points if p.etype in keep]


def _structural_diagnostics(cfg: Configuration) -> tuple[list[Diagnostic], list[Diagnostic]]:
    errors: list[Diagnostic] = []
    warnings: list[Diagnostic] = []

    def err(code: str, message: str, subject: str) -> None:
        errors.append(Diagnostic(code, message, subject))

    def warn(code: str, message: str, subject: str) -> None:
        warnings.append(Diagnostic(code, message, subject))

    declared = set()
    for s in cfg.symbols:
        if not s:
            err("SYMBOLS", "empty symbol name", s)
        elif s in declared:
            err("DUP_ID", f"symbol {s!r} declared twice", s)
        declared.add(s)

    seen_ids: set[str] = set()

    def claim(kind: str, ident: str) -> None:
        if not ident:
            err("DUP_ID", f"empty {kind} id", ident)
        elif ident in seen_ids:
            err("DUP_ID", f"{kind} id {ident!r} is not unique", ident)
        seen_ids.add(ident)

    split_cover = cfg.cover_kind is CoverKind.SPLIT_EVERYWHERE

    for c in cfg.curves:
        claim("curve", c.id)
        for ext in c.extensions:
            claim("extension", ext.id)
            bad = ext.residue.symbols - set(cfg.symbols)
            if bad:
                err(
                    "RESIDUE_SYMBOLS",
                    f"residue of {ext.id} uses undeclared symbols {sorted(bad)}",
                    ext.id,
                )
            if split_cover:
                if ext.sheet not in (1, 2):
                    err("SHEET", f"extension {ext.id} needs sheet=1 or sheet=2", ext.id)
            elif ext.sheet is not None:
                err("SHEET", f"extension {ext.id} carries a sheet but the cover is irreducible", ext.id)

        ramified_type = c.deg_type in (CurveType.I, CurveType.III)
        if ramified_type and c.cover_behavior is not CoverBehavior.RAMIFIED:
            err(
                "CURVE_BEHAVIOR",
                f"type {c.deg_type.value} curve must be ramified, not {c.cover_behavior.value}",
                c.id,
            )
        if not ramified_type and c.cover_behavior is CoverBehavior.RAMIFIED:
            err(
                "CURVE_BEHAVIOR",
                f"type {c.deg_type.value} curve must be inert or split",
                c.id,
            )
        if split_cover and c.cover_behavior is not CoverBehavior.SPLIT:
            err(
                "SPLIT_COVER",
                f"cover splits everywhere but curve {c.id} is {c.cover_behavior.value}",
                c.id,
            )

        expected = 2 if c.cover_behavior is CoverBehavior.SPLIT else 1
        if len(c.extensions) != expected:
            err(
                "EXT_COUNT",
                f"{c.cover_behavior.value} curve needs {expected} extension(s), has {len(c.extensions)}",
                c.id,
            )
        elif split_cover and c.cover_behavior is CoverBehavior.SPLIT:
            sheets = sorted(ext.sheet for ext in c.extensions if ext.sheet in (1, 2))
            if sheets != [1, 2]:
                err("SHEET", f"split curve {c.id} must have one extension per sheet", c.id)

        if c.deg_type is CurveType.I:
            for ext in c.extensions:
                if not ext.residue.is_zero:
                    err("TYPE_I_RESIDUE", f"type I extension {ext.id} must have residue 0", c.id)

        own_ext_ids = {ext.id for ext in c.extensions}
        if c.deg_type is CurveType.IV:
            if c.marking is None:
                err("MARKING", f"type IV curve {c.id} needs a marking", c.id)
            elif c.marking not in own_ext_ids:
                err("MARKING", f"marking {c.marking!r} is not an extension of {c.id}", c.id)
            else:
                for ext in c.extensions:
                    if ext.id != c.marking and not ext.residue.is_zero:
                        err(
                            "UNMARKED_RESIDUE",
                            f"non-marked extension {ext.id} of type IV curve must have residue 0",
                            c.id,
                        )
        elif c.marking is not None:
            err("MARKING", f"marking on non-type-IV curve {c.id}", c.id)

        if c.cores_residue_input is not None:
            if c.cover_behavior is CoverBehavior.SPLIT:
                err("CORES_INPUT", f"cores residue on split curve {c.id} (it is determined)", c.id)
            else:
                bad = c.cores_residue_input.symbols - set(cfg.symbols)
                if bad:
                    err(
                        "RESIDUE_SYMBOLS",
                        f"cores residue of {c.id} uses undeclared symbols {sorted(bad)}",
                        c.id,
                    )

        # Warnings: places where the geometry says a residue should ramify.
        if c.deg_type is CurveType.II and all(ext.residue.is_zero for ext in c.extensions):
            warn("W_TYPE_II_ZERO", f"type II curve {c.id} has all residues zero", c.id)
        if c.deg_type is CurveType.III and any(ext.residue.is_zero for ext in c.extensions):
            warn("W_RAMIFIED_ZERO", f"type III extension of {c.id} has residue 0", c.id)
        if c.deg_type is CurveType.IV and c.marking in own_ext_ids:
            marked = next(ext for ext in c.extensions if ext.id == c.marking)
            if marked.residue.is_zero:
                warn("W_RAMIFIED_ZERO", f"marked extension {marked.id} of {c.id} has residue 0", c.id)
        if c.deg_type is CurveType.IV and c.cover_behavior is CoverBehavior.INERT:
            warn("W_INERT_IV", f"inert type IV curve {c.id}: treated via its cores residue", c.id)
        if (
            c.deg_type is CurveType.II
            and c.cover_behavior is CoverBehavior.INERT
            and c.cores_residue_input is None
        ):
            warn("W_CORES_DEFAULTED", f"cores residue of inert curve {c.id} defaulted to 0", c.id)
        if (
            c.cover_behavior in (CoverBehavior.RAMIFIED, CoverBehavior.INERT)
            and c.deg_type in (CurveType.III, CurveType.IV)
            and c.cores_residue_input is None
            and any(not ext.residue.is_zero for ext in c.extensions)
        ):
            warn(
                "W_CORES_DEFAULTED",
                f"curve {c.id} carries residue but its cores residue defaulted to 0; "
                "supply cores: if the corestriction ramifies here",
                c.id,
            )

    curve_by_id = {c.id: c for c in cfg.curves}
    for p in cfg.points:
        claim("point", p.id)
        a, b = p.incident if len(p.incident) == 2 else (p.incident + ("", ""))[:2]
        if len(p.incident) != 2 or a == b:
            err("POINT_PAIR", f"point {p.id} must join two distinct curves", p.id)
            continue
        missing = [cid for cid in (a, b) if cid not in curve_by_id]
        if missing:
            for cid in missing:
                err("BAD_REF", f"point {p.id} references unknown curve {cid!r}", p.id)
            continue
        ca, cb = curve_by_id[a], curve_by_id[b]
        key = tuple(sorted((ca.deg_type.value, cb.deg_type.value)))
        allowed = _ALLOWED_PAIRS.get(key)
        if allowed is None:
            err(
                "POINT_PAIR",
                f"curves of types {key[0]} and {key[1]} cannot cross at a point",
                p.id,
            )
        elif p.etype not in allowed:
            err(
                "POINT_TYPE",
                f"point type {p.etype.value} does not match curve types ({key[0]}, {key[1]})",
                p.id,
            )
        if p.meets_marked:
            if p.etype is not PointType.IV_II:
                err("MEETS_MARKED", f"meets_marked only applies to IV_II points", p.id)
            elif allowed is not None and p.etype in allowed:
                type_ii = ca if ca.deg_type is CurveType.II else cb
                ext_ids = {ext.id for ext in type_ii.extensions}
                for eid in sorted(p.meets_marked):
                    if eid not in ext_ids:
                        err(
                            "MEETS_MARKED",
                            f"meets_marked entry {eid!r} is not an extension of {type_ii.id}",
                            p.id,
                        )

    return errors, warnings


def _consistency_diagnostics(cfg: Configuration) -> list[Diagnostic]:
    """GC1-GC4: linear-algebra checks that hold for geometric data."""
    # Imported here: brauer builds on this module for the bases.
    from . import brauer
    from .f2 import column_space, intersection_basis, Subspace

    errors: list[Diagnostic] = []
    m_pr = brauer.matrix_p_to_r(cfg)
    m_qp = brauer.matrix_q_to_p(cfg)
    vq = vq_basis(cfg)
    svecs = brauer.s_to_p_vectors(cfg)
    s_labels = brauer.s_space(cfg).generator_labels

    for j, c in enumerate(vq):
        if not m_pr.mul(m_qp.column(j)).is_zero:
            errors.append(
                Diagnostic(
                    "GC1",
                    f"relation vector of curve {c.id} does not map to zero in R",
                    c.id,
                )
            )
    for label, vec in zip(s_labels, svecs):
        if not m_pr.mul(vec).is_zero:
            errors.append(
                Diagnostic(
                    "GC3",
                    f"restriction-kernel generator {label} does not map to zero in R",
                    label,
                )
            )

    q_image = column_space(m_qp)
    s_image = Subspace.span(m_pr.cols, svecs)
    if q_image.dim < len(vq):
        errors.append(Diagnostic("GC4", "relation vectors of Q are linearly dependent in P", "Q"))
    if s_image.dim < len(svecs):
        errors.append(Diagnostic("GC4", "generators of S are linearly dependent in P", "S"))
    if intersection_basis(q_image, s_image).dim > 0:
        errors.append(Diagnostic("GC2", "images of S and Q in P intersect nontrivially", "S∩Q"))
    return errors


def validate(cfg: Configuration) -> ValidationReport:
    """Check every structural invariant, then the geometric-consistency ones.

    The GC checks need well-formed data, so they run only when no
    structural errors were found.  Warnings never reject a configuration.
    """
    errors, warnings = _structural_diagnostics(cfg)
    if not errors:
        errors.extend(_consistency_diagnostics(cfg))
    return ValidationReport(tuple(errors), tuple(warnings))
