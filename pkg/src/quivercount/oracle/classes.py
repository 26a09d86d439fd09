"""Isomorphism classes as GL(alpha)-orbits, with a Burnside cross-check."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..quiver import Quiver, Stability
from .endo import Indecomposability, classify, end_analysis
from .fields import SmallField
from .linalg import gl_elements, nullspace
from .reps import DEFAULT_CAPS, FFRep, OracleCaps, OracleTooLarge, act, enumerate_reps, group_inverse, subrep_test

RepFilter = Callable[[FFRep, SmallField], bool]


def gl_group(F: SmallField, alpha: Sequence[int], caps: OracleCaps = DEFAULT_CAPS) -> list[tuple]:
    """All elements of GL(alpha, F) as (g, g^{-1}) pairs."""
    size = 1
    factors = []
    for a in alpha:
        elems = gl_elements(F, a) if a else ((),)
        size *= len(elems)
        if size > caps.group_size:
            raise OracleTooLarge(f"oracle instance too large: |GL(alpha)| > {caps.group_size}")
        factors.append(elems)
    out = []
    for g in itertools.product(*factors):
        out.append((g, group_inverse(F, g, alpha)))
    return out


@dataclass
class ClassCount:
    orbits: int
    burnside: Optional[Fraction]
    invariant: bool
    filtered_reps: int
    representatives: list = field(default_factory=list, repr=False)

    @property
    def consistent(self) -> bool:
        return self.burnside is None or self.burnside == self.orbits


def count_iso_classes(
    quiver: Quiver,
    alpha: Sequence[int],
    F: SmallField,
    keep: RepFilter = lambda M, F: True,
    *,
    burnside: bool = True,
    caps: OracleCaps = DEFAULT_CAPS,
) -> ClassCount:
    """Number of GL(alpha)-orbits on {M in Rep(alpha, F) : keep(M)}.

    Orbits are traced by applying every group element; ``invariant`` is False
    if some orbit leaves the filtered set.
    """
    group = gl_group(F, alpha, caps)
    selected = {M for M in enumerate_reps(quiver, alpha, F, caps) if keep(M, F)}
    seen: set = set()
    reps = []
    invariant = True
    for M in sorted(selected, key=lambda m: m.mats):
        if M in seen:
            continue
        orbit = {act(F, g, gi, M) for g, gi in group}
        if not orbit <= selected:
            invariant = False
        seen |= orbit
        reps.append(M)
    total = None
    if burnside:
        fixed = sum(1 for g, gi in group for M in selected if act(F, g, gi, M) == M)
        total = Fraction(fixed, len(group))
    return ClassCount(len(reps), total, invariant, len(selected), reps)


def semistable_filter(theta: Stability, mu: Optional[Fraction] = None, caps: OracleCaps = DEFAULT_CAPS) -> RepFilter:
    return lambda M, F: subrep_test(M, F, theta, mu, caps).semistable


def stable_filter(theta: Stability, mu: Optional[Fraction] = None, caps: OracleCaps = DEFAULT_CAPS) -> RepFilter:
    return lambda M, F: subrep_test(M, F, theta, mu, caps).stable


def abs_indecomposable_filter(caps: OracleCaps = DEFAULT_CAPS) -> RepFilter:
    return lambda M, F: classify(M, F, caps) is Indecomposability.ABSOLUTELY_INDECOMPOSABLE


def indecomposable_filter(caps: OracleCaps = DEFAULT_CAPS) -> RepFilter:
    return lambda M, F: classify(M, F, caps) is not Indecomposability.DECOMPOSABLE


def absolutely_stable_filter(theta: Stability, mu: Optional[Fraction] = None, caps: OracleCaps = DEFAULT_CAPS) -> RepFilter:
    """Stable with End = F (stable implies End is a division algebra)."""
    st = stable_filter(theta, mu, caps)
    return lambda M, F: st(M, F) and end_analysis(M, F, caps).end_dim == 1


def both(*filters: RepFilter) -> RepFilter:
    return lambda M, F: all(f(M, F) for f in filters)


@dataclass
class Census:
    """Counts of representations and of isomorphism classes by kind."""

    reps: int
    semistable_reps: int
    classes: dict
    burnside_ok: bool

    def to_json(self) -> dict:
        return {
            "representations": self.reps,
            "semistable_representations": self.semistable_reps,
            "classes": dict(self.classes),
            "burnside_consistent": self.burnside_ok,
        }


CENSUS_KINDS = (
    "all",
    "semistable",
    "stable",
    "indecomposable",
    "absolutely_indecomposable",
    "absolutely_indecomposable_semistable",
    "absolutely_stable",
)


def census(
    quiver: Quiver,
    alpha: Sequence[int],
    F: SmallField,
    theta: Stability,
    mu: Optional[Fraction] = None,
    caps: OracleCaps = DEFAULT_CAPS,
) -> Census:
    """One orbit decomposition of Rep(alpha, F), then every class kind counted on representatives."""
    alpha = tuple(alpha)
    all_reps = list(enumerate_reps(quiver, alpha, F, caps))
    flags = {M: subrep_test(M, F, theta, mu, caps) for M in all_reps}
    orbits = count_iso_classes(quiver, alpha, F, burnside=False, caps=caps)
    burnside = Fraction(sum(F.q ** fixed_space_dim(F, quiver, alpha, g) for g, _ in gl_group(F, alpha, caps)), len(gl_group(F, alpha, caps)))
    counts = dict.fromkeys(CENSUS_KINDS, 0)
    for M in orbits.representatives:
        fl = flags[M]
        if M.is_zero_dim():
            kind, end_dim = Indecomposability.DECOMPOSABLE, None
        else:
            ea = end_analysis(M, F, caps)
            end_dim = ea.end_dim
            if not ea.local:
                kind = Indecomposability.DECOMPOSABLE
            elif ea.residue_degree == 1:
                kind = Indecomposability.ABSOLUTELY_INDECOMPOSABLE
            else:
                kind = Indecomposability.INDECOMPOSABLE
        abs_ind = kind is Indecomposability.ABSOLUTELY_INDECOMPOSABLE
        counts["all"] += 1
        counts["semistable"] += fl.semistable
        counts["stable"] += fl.stable
        counts["indecomposable"] += kind is not Indecomposability.DECOMPOSABLE
        counts["absolutely_indecomposable"] += abs_ind
        counts["absolutely_indecomposable_semistable"] += abs_ind and fl.semistable
        counts["absolutely_stable"] += fl.stable and end_dim == 1
    ss_reps = sum(1 for fl in flags.values() if fl.semistable)
    return Census(len(all_reps), ss_reps, counts, burnside == orbits.orbits)


def fixed_space_dim(F: SmallField, quiver: Quiver, alpha: Sequence[int], g) -> int:
    """dim {X : g_j X = X g_i on every arrow}, so |Fix(g)| = q^dim."""
    total = 0
    for i, j in quiver.arrow_list():
        a, b = alpha[j], alpha[i]
        rows = []
        for r in range(a):
            for c in range(b):
                row = [0] * (a * b)
                for k in range(a):
                    x = g[j][r][k]
                    if x:
                        row[k * b + c] = F.add[row[k * b + c]][x]
                for k in range(b):
                    x = g[i][k][c]
                    if x:
                        row[r * b + k] = F.sub[row[r * b + k]][x]
                rows.append(row)
        total += len(nullspace(F, rows, a * b)) if a * b else 0
    return total
