"""Minimum-cost hitting sets, MCS enumeration and counterexample reduction.

A :class:`HittingSetContext` owns one incremental OLL optimizer.  Each
hypothesis index i has a relaxation variable r_i; sets-to-hit become
positive clauses over the r variables, blocks become negative clauses,
and an optional background theory (added clause by clause) constrains
the candidates further.  Successive candidates are therefore computed
incrementally, with the optimum never decreasing.
"""

from __future__ import annotations

import math

from .formula import Cnf, clause_satisfied
from .maxsat import CostMinimizer
from .sat import Solver


class HardUnsatError(Exception):
    """The hard part of an MCS enumeration problem is unsatisfiable."""


class HittingSetContext:
    """Incremental minimum-cost hitting-set state over relaxation variables.

    r_i = true means hypothesis i is picked; the soft objective prefers
    every r_i false with the hypothesis weight as penalty.
    """

    def __init__(self, weights, num_base_vars: int = 0, rng=None):
        self.weights = tuple(int(w) for w in weights)
        self.num_base_vars = num_base_vars
        self.r_vars = tuple(num_base_vars + 1 + i for i in range(len(self.weights)))
        self.rng = rng  # optional random.Random for candidate tie-breaking
        self.opt = CostMinimizer()
        self.opt.solver.extend_vars(num_base_vars + len(self.weights))
        for r, w in zip(self.r_vars, self.weights):
            self.opt.add_soft(-r, w)
        self.num_sets = 0
        self.num_blocks = 0

    def add_background(self, clause) -> None:
        """Add a hard background clause (may mention base and r variables)."""
        self.opt.add_hard(clause)

    def hs_add_set(self, indices) -> None:
        """Require every future candidate to intersect ``indices``."""
        if not indices:
            raise ValueError("empty set to hit")
        self.opt.add_hard([self.r_vars[i] for i in sorted(indices)])
        self.num_sets += 1

    def hs_add_block(self, indices) -> None:
        """Exclude ``indices`` and all its supersets from future candidates."""
        if not indices:
            raise ValueError("empty block")
        self.opt.add_hard([-self.r_vars[i] for i in sorted(indices)])
        self.num_blocks += 1

    def hs_next_candidate(self):
        """Minimum-cost candidate as (index set, cost), or None if infeasible."""
        if self.rng is not None:
            # scatter ties: fresh saved phases pull equal-cost candidates apart
            for r in self.r_vars:
                self.opt.solver.phase[r] = self.rng.random() < 0.5
        out = self.opt.compute()
        if out is None:
            return None
        model, cost = out
        picked = frozenset(i for i, r in enumerate(self.r_vars) if model[r])
        return picked, cost


def enumerate_mcs(hard: Cnf, soft, limit: int):
    """Up to ``limit`` minimal correction subsets of (hard, soft), by size.

    Each MCS (a frozenset of soft-clause indices) is blocked before the
    next is computed, so results come in non-decreasing size.  Returns
    the empty list when hard plus all soft clauses is satisfiable;
    raises :class:`HardUnsatError` when hard alone is unsatisfiable.
    """
    if limit <= 0:
        probe = Solver(hard.num_vars)
        for c in hard.clauses:
            probe.add_clause(c)
        if not probe.solve().satisfiable:
            raise HardUnsatError
        return []
    opt = CostMinimizer()
    opt.solver.extend_vars(hard.num_vars)
    for c in hard.clauses:
        opt.add_hard(c)
    selectors = []
    for clause, _weight in soft:
        s = opt.solver.new_var()
        selectors.append(s)
        opt.add_hard([-s] + list(clause))
        opt.add_soft(s, 1)  # enumeration is by size, not by weight
    out = opt.compute()
    if out is None:
        raise HardUnsatError
    found = []
    while len(found) < limit:
        model, cost = out
        if cost == 0:
            break  # everything satisfiable: no correction needed
        mcs = frozenset(i for i, s in enumerate(selectors) if not model[s])
        found.append(mcs)
        opt.add_hard([selectors[i] for i in sorted(mcs)])
        out = opt.compute()
        if out is None:
            break  # all MCSes enumerated
    return found


def _falsified_soft(model, soft_clauses, candidates):
    return {i for i in candidates if not clause_satisfied(soft_clauses[i], model)}


class CorrectionSetReducer:
    """Reusable linear-search reducer over a fixed (hard, soft) pair."""

    def __init__(self, hard: Cnf, soft_clauses, weights):
        self.soft_clauses = [tuple(c) for c in soft_clauses]
        self.weights = tuple(weights)
        self.solver = Solver(hard.num_vars)
        for c in hard.clauses:
            self.solver.add_clause(c)
        self.selectors = []
        for clause in self.soft_clauses:
            s = self.solver.new_var()
            self.selectors.append(s)
            self.solver.add_clause([-s] + list(clause))

    def reduce(self, model, falsified, fraction):
        """Shrink a correction set by trying to satisfy its cheapest members.

        Walks the first ceil(fraction * m) clauses of the initial set in
        ascending (weight, index) order; each still-falsified one gets a
        single SAT call, and on success it migrates to the satisfied side
        together with every clause the new model happens to satisfy.
        """
        falsified = set(falsified)
        if fraction <= 0 or not falsified:
            return falsified
        budget = math.ceil(fraction * len(falsified))
        order = sorted(falsified, key=lambda i: (self.weights[i], i))[:budget]
        satisfied = [i for i in range(len(self.soft_clauses)) if i not in falsified]
        for i in order:
            if i not in falsified:
                continue  # migrated as a side effect of an earlier call
            res = self.solver.solve([self.selectors[j] for j in satisfied]
                                    + [self.selectors[i]])
            if not res.satisfiable:
                continue
            moved = {j for j in falsified
                     if clause_satisfied(self.soft_clauses[j], res.model)}
            moved.add(i)
            falsified -= moved
            satisfied.extend(sorted(moved))
        return falsified


def reduce_correction_set(hard: Cnf, soft_clauses, model, falsified, weights,
                          fraction) -> set:
    """One-shot form of :class:`CorrectionSetReducer` (see its ``reduce``)."""
    reducer = CorrectionSetReducer(hard, soft_clauses, weights)
    return reducer.reduce(model, falsified, fraction)
