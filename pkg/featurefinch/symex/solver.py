"""Bounded feasibility checks for path conditions.

A path condition is first narrowed with interval propagation: bounds
flow from variables up to each expression and from each relation back
down to the variables. The atoms are then split into groups sharing
variables. A group whose remaining domains are small enough is decided
exactly by enumeration; larger groups are decided by the intervals
alone when possible and reported as unknown otherwise.
"""
import logging
from enum import Enum
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from featurefinch.language.ir import width_range
from featurefinch.symex.constraints import AtomicConstraint
from featurefinch.symex.values import Expr, SymValue, SymVar

logger = logging.getLogger(__name__)

INT_MIN, INT_MAX = width_range(32)
TOP = (INT_MIN, INT_MAX)
MAX_ROUNDS = 64

Interval = Tuple[int, int]


class Feasibility(Enum):
    """Outcome of a feasibility check."""

    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


class _Empty(Exception):
    """A domain became empty while narrowing."""


class IntervalNarrower:
    """Interval propagation over a set of atoms.

    Attributes:
        domains: Current interval of each variable by display name.
    """

    def __init__(self, atoms: Sequence[AtomicConstraint]) -> None:
        """Collect the declared domains of the atoms' variables."""
        self.atoms = atoms
        self.domains: Dict[str, Interval] = {}
        for atom in atoms:
            for var in atom.variables():
                self.domains[var.name] = (var.lo, var.hi)

    def bounds(self, value: SymValue) -> Optional[Interval]:
        """Bounds of a value, or None if it may wrap around.

        Args:
            value: A symbolic value.

        Returns:
            tuple: Inclusive bounds, or None when unbounded.
        """
        if isinstance(value, int):
            return value, value
        if isinstance(value, SymVar):
            return self.domains[value.name]

        if value.op in ("Eq", "Ne", "Lt", "Le", "And", "Or"):
            return self._truth(value)

        left = self.bounds(value.args[0])
        right = self.bounds(value.args[1])
        if left is None or right is None:
            return None

        if value.op == "Add":
            raw = (left[0] + right[0], left[1] + right[1])
        elif value.op == "Sub":
            raw = (left[0] - right[1], left[1] - right[0])
        elif value.op == "Mul":
            corners = [a * b for a in left for b in right]
            raw = (min(corners), max(corners))
        elif value.op == "SRem" and right[0] > 0:
            limit = right[1] - 1
            raw = (-limit if left[0] < 0 else 0, limit if left[1] > 0 else 0)
        else:
            return None

        if raw[0] < INT_MIN or raw[1] > INT_MAX:
            return None
        return raw

    def _truth(self, value: Expr) -> Interval:
        if value.op in ("And", "Or"):
            left = self._truth_of(value.args[0])
            right = self._truth_of(value.args[1])
            if value.op == "And":
                return (min(left[0], right[0]), min(left[1], right[1]))
            return (max(left[0], right[0]), max(left[1], right[1]))

        left = self.bounds(value.args[0]) or TOP
        right = self.bounds(value.args[1]) or TOP
        if value.op == "Eq":
            if left[0] == left[1] == right[0] == right[1]:
                return 1, 1
            if left[1] < right[0] or right[1] < left[0]:
                return 0, 0
        elif value.op == "Ne":
            if left[0] == left[1] == right[0] == right[1]:
                return 0, 0
            if left[1] < right[0] or right[1] < left[0]:
                return 1, 1
        elif value.op == "Lt":
            if left[1] < right[0]:
                return 1, 1
            if left[0] >= right[1]:
                return 0, 0
        elif value.op == "Le":
            if left[1] <= right[0]:
                return 1, 1
            if left[0] > right[1]:
                return 0, 0
        return 0, 1

    def _truth_of(self, value: SymValue) -> Interval:
        bounds = self.bounds(value) or TOP
        if bounds[0] > 0 or bounds[1] < 0:
            return 1, 1
        if bounds == (0, 0):
            return 0, 0
        return 0, 1

    def truth(self, atom: AtomicConstraint) -> Interval:
        """Truth interval of an atom under the current domains."""
        return self._truth(atom.value)

    def _restrict(self, value: SymValue, target: Interval) -> bool:
        """Narrow the variables of `value` so it fits `target`.

        Returns:
            bool: Whether any domain changed.
        """
        if target[0] > target[1]:
            raise _Empty()
        if isinstance(value, int):
            if not target[0] <= value <= target[1]:
                raise _Empty()
            return False
        if isinstance(value, SymVar):
            lo, hi = self.domains[value.name]
            new = (max(lo, target[0]), min(hi, target[1]))
            if new[0] > new[1]:
                raise _Empty()
            self.domains[value.name] = new
            return new != (lo, hi)
        if value.op not in ("Add", "Sub") or self.bounds(value) is None:
            return False

        left, right = value.args
        left_bounds = self.bounds(left)
        right_bounds = self.bounds(right)
        if value.op == "Add":
            changed = self._restrict(
                left,
                (target[0] - right_bounds[1], target[1] - right_bounds[0]),
            )
            left_bounds = self.bounds(left)
            changed |= self._restrict(
                right,
                (target[0] - left_bounds[1], target[1] - left_bounds[0]),
            )
            return changed

        changed = self._restrict(
            left, (target[0] + right_bounds[0], target[1] + right_bounds[1])
        )
        left_bounds = self.bounds(left)
        changed |= self._restrict(
            right, (left_bounds[0] - target[1], left_bounds[1] - target[0])
        )
        return changed

    def _exclude(self, value: SymValue, point: int) -> bool:
        if not isinstance(value, SymVar):
            return False
        lo, hi = self.domains[value.name]
        if lo == point:
            lo += 1
        if hi == point:
            hi -= 1
        if lo > hi:
            raise _Empty()
        changed = (lo, hi) != self.domains[value.name]
        self.domains[value.name] = (lo, hi)
        return changed

    def _narrow_atom(self, atom: AtomicConstraint) -> bool:
        lhs, rhs = atom.lhs, atom.rhs
        left = self.bounds(lhs) or TOP
        right = self.bounds(rhs) or TOP

        if atom.relation == "Eq":
            changed = self._restrict(lhs, right)
            return self._restrict(rhs, self.bounds(lhs) or TOP) | changed
        if atom.relation == "Lt":
            changed = self._restrict(lhs, (INT_MIN, right[1] - 1))
            left = self.bounds(lhs) or TOP
            return self._restrict(rhs, (left[0] + 1, INT_MAX)) | changed
        if atom.relation == "Le":
            changed = self._restrict(lhs, (INT_MIN, right[1]))
            left = self.bounds(lhs) or TOP
            return self._restrict(rhs, (left[0], INT_MAX)) | changed

        changed = False
        if right[0] == right[1]:
            changed |= self._exclude(lhs, right[0])
        if left[0] == left[1]:
            changed |= self._exclude(rhs, left[0])
        return changed

    def narrow(self) -> bool:
        """Propagate until a fixpoint or the round limit.

        Returns:
            bool: False if some atom is refuted or a domain emptied.
        """
        try:
            for _ in range(MAX_ROUNDS):
                changed = False
                for atom in self.atoms:
                    if self.truth(atom) == (0, 0):
                        return False
                    changed |= self._narrow_atom(atom)
                if not changed:
                    break
        except _Empty:
            return False
        return all(self.truth(atom) != (0, 0) for atom in self.atoms)


def components(
    atoms: Iterable[AtomicConstraint],
) -> List[List[AtomicConstraint]]:
    """Group atoms that share variables, in first-seen order."""
    parent: Dict[str, str] = {}

    def find(name: str) -> str:
        while parent[name] != name:
            parent[name] = parent[parent[name]]
            name = parent[name]
        return name

    atoms = list(atoms)
    for atom in atoms:
        names = sorted(var.name for var in atom.variables())
        for name in names:
            parent.setdefault(name, name)
        for name in names[1:]:
            parent[find(name)] = find(names[0])

    groups: Dict[str, List[AtomicConstraint]] = {}
    for atom in atoms:
        names = [var.name for var in atom.variables()]
        key = find(names[0]) if names else ""
        groups.setdefault(key, []).append(atom)
    return list(groups.values())


def _enumerate(
    atoms: List[AtomicConstraint], domains: Dict[str, Interval]
) -> bool:
    names = sorted({var.name for atom in atoms for var in atom.variables()})
    ranges = [range(domains[n][0], domains[n][1] + 1) for n in names]
    for values in product(*ranges):
        env = dict(zip(names, values))
        if all(atom.holds(env) for atom in atoms):
            return True
    return False


def _few_exclusions(
    atoms: List[AtomicConstraint],
    names: set,
    domains: Dict[str, Interval],
) -> bool:
    """Whether one variable only avoids fewer points than its domain has."""
    if len(names) != 1:
        return False
    for atom in atoms:
        sides = (atom.lhs, atom.rhs)
        if atom.relation != "Ne" or not any(isinstance(s, int) for s in sides):
            return False
        if not any(isinstance(s, SymVar) for s in sides):
            return False
    lo, hi = domains[next(iter(names))]
    return hi - lo + 1 > len(atoms)


def check_feasibility(
    atoms: Sequence[AtomicConstraint], budget: int = 4096
) -> Feasibility:
    """Decide whether a conjunction of atoms is satisfiable.

    Args:
        atoms: Path condition atoms.
        budget: Largest product of domain sizes enumerated exactly.

    Returns:
        Feasibility: SAT or UNSAT when decided, UNKNOWN otherwise.
    """
    narrower = IntervalNarrower(atoms)
    if not narrower.narrow():
        return Feasibility.UNSAT

    verdict = Feasibility.SAT
    for group in components(atoms):
        names = {var.name for atom in group for var in atom.variables()}
        size = 1
        for name in names:
            lo, hi = narrower.domains[name]
            size *= hi - lo + 1
            if size > budget:
                break

        if size <= budget:
            if not _enumerate(group, narrower.domains):
                return Feasibility.UNSAT
        elif not (
            all(narrower.truth(atom) == (1, 1) for atom in group)
            or _few_exclusions(group, names, narrower.domains)
        ):
            verdict = Feasibility.UNKNOWN

    return verdict


class FeasibilityChecker:
    """Caching wrapper around check_feasibility.

    Attributes:
        budget: Largest domain product enumerated exactly.
        checks: Number of checks requested.
        unknown: Number of checks that ended UNKNOWN.
    """

    def __init__(self, budget: int = 4096) -> None:
        """Establish the budget and an empty cache."""
        self.budget = budget
        self.checks = 0
        self.unknown = 0
        self._cache: Dict[Tuple[str, ...], Feasibility] = {}

    def __call__(self, atoms: Sequence[AtomicConstraint]) -> Feasibility:
        """Check a path condition, reusing earlier verdicts.

        Args:
            atoms: Path condition atoms.

        Returns:
            Feasibility: The verdict.
        """
        self.checks += 1
        key = tuple(sorted(atom.text for atom in atoms)) + tuple(
            sorted(
                f"{var.name}:{var.lo}:{var.hi}"
                for atom in atoms
                for var in atom.variables()
            )
        )
        if key not in self._cache:
            verdict = check_feasibility(atoms, self.budget)
            logger.debug(
                "feasibility %s for %d atoms", verdict.value, len(key)
            )
            self._cache[key] = verdict
        verdict = self._cache[key]
        if verdict is Feasibility.UNKNOWN:
            self.unknown += 1
        return verdict
