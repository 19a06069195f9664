"""Core-guided weighted MaxSAT on top of the CDCL engine.

The optimizer follows the OLL scheme with soft cardinality constraints:
soft literals are passed as assumptions, each unsatisfiable core pays
its minimum weight into a lower bound and is relaxed with a totalizer
whose outputs become new (lazily extended) soft literals.  Weighted
cores are handled by weight splitting.  The engine is incremental:
hard clauses may be added between ``compute`` calls, and the search
resumes from the reformulated state (the optimum can only grow).

Cores are trimmed by re-solving under the core itself, at most 5 times
per core.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import Cnf
from .sat import Solver

CORE_TRIM_LIMIT = 5


@dataclass(frozen=True)
class MaxSatInstance:
    """Hard CNF plus soft unit literals (preferred true) with weights."""

    hard: Cnf
    soft: tuple[tuple[int, int], ...] = ()  # (literal, weight)

    def __post_init__(self):
        object.__setattr__(self, "soft", tuple((int(l), int(w)) for l, w in self.soft))
        for l, w in self.soft:
            if w < 1:
                raise ValueError("soft weight must be >= 1")
            if abs(l) > self.hard.num_vars:
                raise ValueError("soft literal %d out of range" % l)


@dataclass
class MaxSatResult:
    hard_unsat: bool
    model: list | None = None
    cost: int | None = None  # exact sum of weights of falsified soft literals


class Totalizer:
    """Clause-level totalizer counting how many input literals are true.

    Only the input-to-output direction is encoded: output j (0-based)
    is forced true whenever at least j+1 inputs are true, so assuming
    its negation bounds the count from above.
    """

    def __init__(self, solver: Solver, inputs):
        self.solver = solver
        self.n = len(inputs)
        self.outs = self._build(list(inputs))

    def _build(self, lits):
        if len(lits) == 1:
            return [lits[0]]
        half = len(lits) // 2
        left = self._build(lits[:half])
        right = self._build(lits[half:])
        outs = [self.solver.new_var() for _ in range(len(left) + len(right))]
        for i in range(len(left) + 1):
            for j in range(len(right) + 1):
                if i + j == 0:
                    continue
                clause = []
                if i > 0:
                    clause.append(-left[i - 1])
                if j > 0:
                    clause.append(-right[j - 1])
                clause.append(outs[i + j - 1])
                self.solver.add_clause(clause)
        return outs

    def output(self, idx):
        """Literal that is true when at least idx+1 inputs are true."""
        return self.outs[idx]


class CostMinimizer:
    """Incremental OLL optimizer over one owned SAT solver."""

    def __init__(self, solver: Solver | None = None):
        self.solver = solver if solver is not None else Solver()
        self.softs: dict[int, int] = {}  # soft literal -> remaining weight
        self.lower_bound = 0
        self.hard_unsat = False
        # soft literal -> (totalizer, output index, creation weight)
        self._sums: dict[int, tuple[Totalizer, int, int]] = {}
        self.cores_found = 0
        self.trim_solves = 0
        self.max_trims_per_core = 0

    def add_hard(self, clause):
        self.solver.add_clause(clause)

    def add_soft(self, lit, weight):
        if weight < 1:
            raise ValueError("soft weight must be >= 1")
        if abs(lit) > self.solver.num_vars:
            self.solver.extend_vars(abs(lit))
        self.softs[lit] = self.softs.get(lit, 0) + weight

    def _trim(self, core):
        trims = 0
        while len(core) > 1 and trims < CORE_TRIM_LIMIT:
            res = self.solver.solve(sorted(core))
            trims += 1
            self.trim_solves += 1
            assert not res.satisfiable
            if len(res.core) >= len(core):
                core = res.core
                break
            core = res.core
        self.max_trims_per_core = max(self.max_trims_per_core, trims)
        return core

    def _extend_sum(self, lit):
        # `lit` was an exhausted totalizer output: expose the next bound.
        entry = self._sums.pop(lit, None)
        if entry is None:
            return
        tot, idx, weight = entry
        if idx + 1 < tot.n:
            nxt = -tot.output(idx + 1)
            self.softs[nxt] = self.softs.get(nxt, 0) + weight
            self._sums[nxt] = (tot, idx + 1, weight)

    def compute(self):
        """Advance to the current optimum; returns (model, cost) or None."""
        if self.hard_unsat:
            return None
        while True:
            res = self.solver.solve(sorted(self.softs))
            if res.satisfiable:
                return res.model, self.lower_bound
            core = res.core
            if not core:
                self.hard_unsat = True
                return None
            core = self._trim(core)
            self.cores_found += 1
            w = min(self.softs[l] for l in core)
            self.lower_bound += w
            inputs = []
            for l in sorted(core):
                self.softs[l] -= w
                if self.softs[l] == 0:
                    del self.softs[l]
                    self._extend_sum(l)
                inputs.append(-l)
            if len(inputs) > 1:
                tot = Totalizer(self.solver, inputs)
                out = -tot.output(1)  # penalize a second falsified member
                self.softs[out] = self.softs.get(out, 0) + w
                self._sums[out] = (tot, 1, w)


def solve_wcnf(hard: Cnf, soft) -> MaxSatResult:
    """Minimize the weight of falsified soft clauses (not just literals).

    Unit soft clauses become soft literals directly; longer ones are
    relaxed with a fresh selector implied by the clause's falsity.
    """
    opt = CostMinimizer()
    opt.solver.extend_vars(hard.num_vars)
    for c in hard.clauses:
        opt.add_hard(c)
    for clause, w in soft:
        clause = tuple(clause)
        if len(clause) == 1:
            opt.add_soft(clause[0], w)
        else:
            s = opt.solver.new_var()
            opt.add_hard((-s,) + clause)
            opt.add_soft(s, w)
    out = opt.compute()
    if out is None:
        return MaxSatResult(hard_unsat=True)
    model, cost = out
    return MaxSatResult(hard_unsat=False, model=model, cost=cost)


def solve_maxsat(inst: MaxSatInstance) -> MaxSatResult:
    """Exact minimum-weight-of-falsified-softs solution, or HardUnsat."""
    opt = CostMinimizer()
    opt.solver.extend_vars(inst.hard.num_vars)
    for c in inst.hard.clauses:
        opt.add_hard(c)
    for l, w in inst.soft:
        opt.add_soft(l, w)
    out = opt.compute()
    if out is None:
        return MaxSatResult(hard_unsat=True)
    model, cost = out
    return MaxSatResult(hard_unsat=False, model=model, cost=cost)
