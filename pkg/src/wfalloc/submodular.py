"""Exhaustive submodularity and monotonicity checks for black-box set
functions, plus the majorization machinery used to certify them.

The checkers enumerate every required subset combination below a size cap,
so an empty violation list is a certificate at the chosen tolerance rather
than a sampled verdict. Oversized ground sets are rejected, never sampled.
"""

import csv
from dataclasses import dataclass
from itertools import accumulate
from typing import Callable

__all__ = [
    "GroundSetTooLargeError",
    "SetFunctionOracle",
    "SubmodularityViolation",
    "check_submodular_pairwise",
    "check_setpair_submodular",
    "check_monotone",
    "majorizes",
    "karamata_holds",
    "violations_to_csv",
]


class GroundSetTooLargeError(ValueError):
    """Ground set exceeds the exhaustive-enumeration cap."""


@dataclass(frozen=True)
class SetFunctionOracle:
    """A finite ground set plus a subset -> value callable.

    ``evaluate`` must be deterministic and safe to call repeatedly (results
    are memoized during a check). Elements must sort consistently so that
    enumeration order is reproducible.
    """

    ground_set: frozenset
    evaluate: Callable


@dataclass(frozen=True)
class SubmodularityViolation:
    """One failing triple of the pairwise diminishing-returns inequality.

    ``lhs`` is f(S+i) + f(S+j), ``rhs`` is f(S) + f(S+i+j), and
    ``gap = rhs - lhs`` exceeds the tolerance for every reported violation.
    """

    base_set: frozenset
    elem_i: object
    elem_j: object
    lhs: float
    rhs: float
    gap: float


def _memoized(oracle):
    cache = {}

    def f(s):
        v = cache.get(s)
        if v is None:
            v = float(oracle.evaluate(s))
            cache[s] = v
        return v

    return f


def _subsets(elems):
    n = len(elems)
    return [frozenset(e for t, e in enumerate(elems) if mask >> t & 1) for mask in range(1 << n)]


def check_submodular_pairwise(oracle, tolerance=1e-9, max_ground_size=12):
    """Every (S, i, j) with f(S+i) + f(S+j) < f(S) + f(S+i+j) - tolerance.

    Enumerates all S subset of U and all unordered pairs i != j outside S.
    An empty list certifies the pairwise submodularity inequality at this
    tolerance over the whole ground set.
    """
    if tolerance < 0.0:
        raise ValueError("tolerance must be nonnegative")
    elems = sorted(oracle.ground_set)
    u = len(elems)
    if u > max_ground_size:
        raise GroundSetTooLargeError(
            f"ground set too large for the exhaustive pairwise check: {u} > {max_ground_size}"
        )
    f = _memoized(oracle)
    violations = []
    for mask in range(1 << u):
        base = frozenset(e for t, e in enumerate(elems) if mask >> t & 1)
        outside = [e for t, e in enumerate(elems) if not mask >> t & 1]
        f_base = f(base)
        for a, i in enumerate(outside):
            f_i = f(base | {i})
            for j in outside[a + 1:]:
                lhs = f_i + f(base | {j})
                rhs = f_base + f(base | {i, j})
                gap = rhs - lhs
                if gap > tolerance:
                    violations.append(SubmodularityViolation(base, i, j, lhs, rhs, gap))
    return violations


def check_setpair_submodular(oracle, tolerance=1e-9, max_ground_size=8):
    """Every unordered pair (S, T) with f(S) + f(T) < f(S&T) + f(S|T) - tolerance.

    The set-pair form of submodularity; an empty list on small ground sets
    confirms it agrees with the pairwise form.
    """
    if tolerance < 0.0:
        raise ValueError("tolerance must be nonnegative")
    elems = sorted(oracle.ground_set)
    u = len(elems)
    if u > max_ground_size:
        raise GroundSetTooLargeError(
            f"ground set too large for the exhaustive set-pair check: {u} > {max_ground_size}"
        )
    f = _memoized(oracle)
    subs = _subsets(elems)
    violations = []
    for smask in range(len(subs)):
        for tmask in range(smask, len(subs)):
            gap = f(subs[smask & tmask]) + f(subs[smask | tmask]) - f(subs[smask]) - f(subs[tmask])
            if gap > tolerance:
                violations.append((subs[smask], subs[tmask]))
    return violations


def check_monotone(oracle, tolerance=1e-9, max_ground_size=8):
    """Every nested pair (S, T) with S subset of T but f(S) > f(T) + tolerance."""
    if tolerance < 0.0:
        raise ValueError("tolerance must be nonnegative")
    elems = sorted(oracle.ground_set)
    u = len(elems)
    if u > max_ground_size:
        raise GroundSetTooLargeError(
            f"ground set too large for the exhaustive monotonicity check: {u} > {max_ground_size}"
        )
    f = _memoized(oracle)
    subs = _subsets(elems)
    violations = []
    for tmask in range(len(subs)):
        f_t = f(subs[tmask])
        smask = tmask
        while True:
            if f(subs[smask]) > f_t + tolerance:
                violations.append((subs[smask], subs[tmask]))
            if smask == 0:
                break
            smask = (smask - 1) & tmask
    return violations


def majorizes(a, b, tolerance=1e-9):
    """True iff the entries of ``a`` majorize those of ``b``.

    Both vectors are sorted descending internally; the sums must agree
    within a relative tolerance and every descending prefix sum of ``a``
    must dominate the matching prefix of ``b``. Length mismatch raises.
    """
    a = sorted((float(x) for x in a), reverse=True)
    b = sorted((float(x) for x in b), reverse=True)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if not a:
        return True
    pa = list(accumulate(a))
    pb = list(accumulate(b))
    slack = tolerance * max(1.0, abs(pa[-1]), abs(pb[-1]))
    if abs(pa[-1] - pb[-1]) > slack:
        return False
    return all(x >= y - slack for x, y in zip(pa, pb))


def karamata_holds(a, b, g, tolerance=1e-9):
    """Whether sum(g(a_i)) >= sum(g(b_i)) - tolerance for a convex ``g``.

    Callers must have established majorizes(a, b) for the verdict to carry
    meaning; convexity of ``g`` is trusted, not verified here.
    """
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(g(x) for x in a) >= sum(g(x) for x in b) - tolerance


def violations_to_csv(violations, dest):
    """Debug dump of pairwise violations, one CSV row per triple."""

    def _write(fh):
        writer = csv.writer(fh)
        writer.writerow(["base_set", "i", "j", "lhs", "rhs", "gap"])
        for v in violations:
            base = ";".join(str(e) for e in sorted(v.base_set))
            writer.writerow([base, v.elem_i, v.elem_j, repr(v.lhs), repr(v.rhs), repr(v.gap)])

    if hasattr(dest, "write"):
        _write(dest)
    else:
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
