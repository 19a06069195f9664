"""Incremental, assumption-based CDCL SAT solver.

Conflict-driven clause learning with two-watched-literal propagation,
activity-based branching, phase saving, Luby restarts and learned-clause
reduction.  Assumptions are handled MiniSat-style: they occupy the first
decision levels, and when one is found falsified the implication graph
is walked backwards to extract an unsatisfiable core (a subset of the
assumption literals).

The clause database only grows; clauses may be added between solve
calls and all subsequent queries see them.
"""

from __future__ import annotations

import heapq
import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass


@dataclass
class SatResult:
    """Outcome of a query: a total model, or a core over the assumptions."""

    satisfiable: bool
    model: list | None = None  # bool per variable, index 0 unused
    core: frozenset | None = None  # subset of the passed assumption literals


def _luby(x):
    # Luby sequence (1, 1, 2, 1, 1, 2, 4, ...), 0-based index.
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) // 2
        seq -= 1
        x = x % size
    return 1 << seq


class Solver:
    """A single-instance CDCL engine; distinct instances are independent."""

    def __init__(self, num_vars: int = 0, seed: int = 0):
        # `seed` is accepted for interface stability; the search itself is
        # deterministic, so identical call sequences give identical results.
        self.seed = seed
        self.ok = True
        self.num_vars = 0
        self.val = [0]  # 0 unassigned, 1 true, -1 false (per variable)
        self.level = [0]
        self.reason = [None]
        self.phase = [False]
        self.activity = [0.0]
        self.watches = {}
        self.clauses = []  # problem clauses
        self.learnts = []
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.var_inc = 1.0
        self.order = []  # lazy max-activity heap of (-activity, var)
        self.max_learnts = 1000
        self.num_conflicts = 0
        self.num_decisions = 0
        self.num_propagations = 0
        if num_vars:
            self.extend_vars(num_vars)

    # -- variables ----------------------------------------------------------

    def extend_vars(self, n):
        while self.num_vars < n:
            self.num_vars += 1
            v = self.num_vars
            self.val.append(0)
            self.level.append(0)
            self.reason.append(None)
            self.phase.append(False)
            self.activity.append(0.0)
            self.watches[v] = []
            self.watches[-v] = []
            heapq.heappush(self.order, (0.0, v))

    def new_var(self) -> int:
        self.extend_vars(self.num_vars + 1)
        return self.num_vars

    def _lit_val(self, l):
        v = self.val[l if l > 0 else -l]
        return v if l > 0 else -v

    # -- clause addition ----------------------------------------------------

    def add_clause(self, lits) -> None:
        """Add a clause; out-of-range variables extend the variable count."""
        self._backjump(0)
        seen = set()
        clause = []
        for l in lits:
            l = int(l)
            if l == 0:
                raise ValueError("literal 0 in clause")
            if -l in seen:
                return  # tautology: always satisfied
            if l in seen:
                continue
            seen.add(l)
            if abs(l) > self.num_vars:
                self.extend_vars(abs(l))
            if self._lit_val(l) == 1 and self.level[abs(l)] == 0:
                return  # satisfied at root
            if self._lit_val(l) == -1 and self.level[abs(l)] == 0:
                continue  # falsified at root: drop literal
            clause.append(l)
        if not self.ok:
            return
        if not clause:
            self.ok = False
            return
        if len(clause) == 1:
            l = clause[0]
            if self._lit_val(l) == -1:
                self.ok = False
            elif self._lit_val(l) == 0:
                self._enqueue(l, None)
            return
        self.clauses.append(clause)
        self.watches[clause[0]].append(clause)
        self.watches[clause[1]].append(clause)

    # -- trail management ---------------------------------------------------

    def _enqueue(self, l, reason):
        v = abs(l)
        self.val[v] = 1 if l > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(l)

    def _backjump(self, blevel):
        if len(self.trail_lim) <= blevel:
            return
        bound = self.trail_lim[blevel]
        for i in range(len(self.trail) - 1, bound - 1, -1):
            l = self.trail[i]
            v = abs(l)
            self.phase[v] = l > 0
            self.val[v] = 0
            self.reason[v] = None
            heapq.heappush(self.order, (-self.activity[v], v))
        del self.trail[bound:]
        del self.trail_lim[blevel:]
        self.qhead = len(self.trail)

    # -- propagation --------------------------------------------------------

    def _propagate(self):
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.num_propagations += 1
            neg = -p
            ws = self.watches[neg]
            kept = []
            n = len(ws)
            i = 0
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == neg:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if self._lit_val(first) == 1:
                    kept.append(c)
                    continue
                found = False
                for k in range(2, len(c)):
                    if self._lit_val(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        self.watches[c[1]].append(c)
                        found = True
                        break
                if found:
                    continue
                kept.append(c)
                if self._lit_val(first) == -1:
                    kept.extend(ws[i:])
                    self.watches[neg] = kept
                    return c
                self._enqueue(first, c)
            self.watches[neg] = kept
        return None

    # -- conflict analysis --------------------------------------------------

    def _bump(self, v):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.num_vars + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.order = [(-self.activity[u], u) for u in range(1, self.num_vars + 1)
                          if self.val[u] == 0]
            heapq.heapify(self.order)
        heapq.heappush(self.order, (-self.activity[v], v))

    def _analyze(self, conflict):
        learnt = [0]
        seen = set()
        counter = 0
        p = None
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        c = conflict
        while True:
            start = 1 if p is not None else 0
            for q in c[start:]:
                v = abs(q)
                if v not in seen and self.level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            p = self.trail[idx]
            v = abs(p)
            c = self.reason[v]
            seen.discard(v)
            counter -= 1
            idx -= 1
            if counter == 0:
                break
        learnt[0] = -p

        # cheap local minimization: drop literals implied by the rest
        if len(learnt) > 2:
            keep = [learnt[0]]
            for q in learnt[1:]:
                r = self.reason[abs(q)]
                if r is None:
                    keep.append(q)
                    continue
                for x in r[1:]:
                    if abs(x) not in seen and self.level[abs(x)] > 0:
                        keep.append(q)
                        break
            learnt = keep

        if len(learnt) == 1:
            return learnt, 0
        # pull the second-highest level literal into slot 1
        mi = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[mi] = learnt[mi], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _analyze_final(self, p):
        """Assumptions implying the falsified assumption literal p."""
        core = {p}
        if not self.trail_lim:
            return frozenset(core)
        seen = {abs(p)}
        for i in range(len(self.trail) - 1, self.trail_lim[0] - 1, -1):
            l = self.trail[i]
            v = abs(l)
            if v not in seen:
                continue
            r = self.reason[v]
            if r is None:
                if self.level[v] > 0:
                    core.add(l)
            else:
                for q in r[1:]:
                    if self.level[abs(q)] > 0:
                        seen.add(abs(q))
            seen.discard(v)
        return frozenset(core)

    # -- learned clause management ------------------------------------------

    def _reduce_db(self):
        locked = set()
        for v in range(1, self.num_vars + 1):
            r = self.reason[v]
            if r is not None:
                locked.add(id(r))
        self.learnts.sort(key=len)
        keep_n = len(self.learnts) // 2
        kept, dropped = [], []
        for i, c in enumerate(self.learnts):
            if i < keep_n or len(c) <= 2 or id(c) in locked:
                kept.append(c)
            else:
                dropped.append(id(c))
        if not dropped:
            return
        self.learnts = kept
        dropped = set(dropped)
        for l in self.watches:
            self.watches[l] = [c for c in self.watches[l] if id(c) not in dropped]

    # -- search -------------------------------------------------------------

    def _decide(self):
        while self.order:
            _, v = heapq.heappop(self.order)
            if self.val[v] == 0:
                return v if self.phase[v] else -v
        return 0

    def solve(self, assumptions=()) -> SatResult:
        """Decide satisfiability of the clause database under assumptions."""
        self._backjump(0)
        if self.ok and self._propagate() is not None:
            self.ok = False
        if not self.ok:
            return SatResult(False, core=frozenset())
        assumptions = [int(a) for a in assumptions]
        for a in assumptions:
            if abs(a) > self.num_vars:
                self.extend_vars(abs(a))

        restart_idx = 0
        conflicts_left = 100 * _luby(restart_idx)
        while True:
            conflict = self._propagate()
            if conflict is not None:
                self.num_conflicts += 1
                if not self.trail_lim:
                    self.ok = False
                    return SatResult(False, core=frozenset())
                learnt, blevel = self._analyze(conflict)
                self._backjump(blevel)
                if len(learnt) == 1:
                    if self._lit_val(learnt[0]) == -1:
                        self.ok = False
                        return SatResult(False, core=frozenset())
                    if self._lit_val(learnt[0]) == 0:
                        self._enqueue(learnt[0], None)
                else:
                    c = list(learnt)
                    self.learnts.append(c)
                    self.watches[c[0]].append(c)
                    self.watches[c[1]].append(c)
                    self._enqueue(c[0], c)
                self.var_inc /= 0.95
                conflicts_left -= 1
                if conflicts_left <= 0:
                    restart_idx += 1
                    conflicts_left = 100 * _luby(restart_idx)
                    self._backjump(0)
                    if len(self.learnts) > self.max_learnts:
                        self._reduce_db()
                        self.max_learnts = int(self.max_learnts * 1.2)
                continue

            dl = len(self.trail_lim)
            if dl < len(assumptions):
                a = assumptions[dl]
                v = self._lit_val(a)
                if v == 1:
                    self.trail_lim.append(len(self.trail))
                elif v == -1:
                    core = self._analyze_final(a)
                    self._backjump(0)
                    return SatResult(False, core=core)
                else:
                    self.num_decisions += 1
                    self.trail_lim.append(len(self.trail))
                    self._enqueue(a, None)
            else:
                if len(self.trail) == self.num_vars:
                    model = [False] * (self.num_vars + 1)
                    for v in range(1, self.num_vars + 1):
                        model[v] = self.val[v] == 1
                    self._backjump(0)
                    return SatResult(True, model=model)
                lit = self._decide()
                self.num_decisions += 1
                self.trail_lim.append(len(self.trail))
                self._enqueue(lit, None)


class ExternalSolver:
    """Delegates queries to an external DIMACS CNF solver command.

    The command is run with a CNF file path appended and must answer
    with an "s SATISFIABLE" / "s UNSATISFIABLE" line; satisfiable
    answers need "v" lines listing the model literals (0-terminated).
    Assumptions are emitted as unit clauses, so unsatisfiable cores are
    the full assumption set rather than a minimized subset.  The query
    interface mirrors the embedded Solver.
    """

    def __init__(self, command, num_vars: int = 0):
        if isinstance(command, str):
            command = shlex.split(command)
        self.command = list(command)
        self.num_vars = num_vars
        self.clauses = []
        self.ok = True

    def extend_vars(self, n):
        self.num_vars = max(self.num_vars, n)

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add_clause(self, lits) -> None:
        seen = set()
        clause = []
        for l in lits:
            l = int(l)
            if l == 0:
                raise ValueError("literal 0 in clause")
            if -l in seen:
                return  # tautology
            if l not in seen:
                seen.add(l)
                clause.append(l)
                self.extend_vars(abs(l))
        if not clause:
            self.ok = False
            return
        self.clauses.append(tuple(clause))

    def solve(self, assumptions=()) -> SatResult:
        assumptions = [int(a) for a in assumptions]
        for a in assumptions:
            self.extend_vars(abs(a))
        if not self.ok:
            return SatResult(False, core=frozenset())
        rows = self.clauses + [(a,) for a in assumptions]
        text = ["p cnf %d %d" % (self.num_vars, len(rows))]
        text += [" ".join(str(l) for l in c) + " 0" for c in rows]
        with tempfile.NamedTemporaryFile("w", suffix=".cnf",
                                         delete=False) as fh:
            fh.write("\n".join(text) + "\n")
            path = fh.name
        try:
            out = subprocess.run(self.command + [path],
                                 capture_output=True, text=True).stdout
        finally:
            os.unlink(path)
        status = None
        lits = []
        for line in out.splitlines():
            if line.startswith("s "):
                status = line[2:].strip()
            elif line.startswith("v "):
                lits += [int(tok) for tok in line[2:].split() if tok != "0"]
        if status == "UNSATISFIABLE":
            return SatResult(False, core=frozenset(assumptions))
        if status != "SATISFIABLE":
            raise RuntimeError("external solver gave no status line")
        model = [False] * (self.num_vars + 1)
        for l in lits:
            if abs(l) <= self.num_vars:
                model[abs(l)] = l > 0
        return SatResult(True, model=model)
