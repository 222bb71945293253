"""The system's side of the game: which recourse actions to release.

A GameInstance materializes everything selection needs as plain cost tables,
so geometric populations and hand-built synthetic instances run through the
same machinery. Selection operates under the gated reading: an agent holds
its own action only when that action is part of the released subset, and the
Bernoulli disclosure of released actions and positive rows controls what
everyone can imitate.

Three objectives coexist and are reported separately rather than conflated:
expected utility (qualification deltas per action taken), the recourse count
at certain disclosure, and the expected number of imitators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .costs import CostModel, manipulation_cost_matrix, recourse_cost_matrix
from .errors import UnsupportedModeError
from .model import LinearClassifier
from .response import DO_NOTHING_CUTOFF, optimal_recourse

ENUMERATION_LIMIT = 16
BRUTE_FORCE_LIMIT = 20
ILP_LIMIT = 25


@dataclass
class GameInstance:
    """Cost tables and qualification values for one selection problem.

    Rows index agents (negatively classified), columns index candidate
    actions. ``own_candidate[i]`` is the column holding agent i's own action,
    or -1 when the agent has none. ``c_m_pos`` covers imitation of initially
    positive rows that are subject to the same disclosure draw.
    """

    c_r_cand: np.ndarray
    c_m_cand: np.ndarray
    q_x: np.ndarray
    q_xr: np.ndarray
    p: float
    alpha: float = 0.0
    c_m_pos: np.ndarray = field(default=None)  # type: ignore[assignment]
    own_candidate: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.c_r_cand = np.asarray(self.c_r_cand, dtype=float)
        self.c_m_cand = np.asarray(self.c_m_cand, dtype=float)
        n, m = self.c_r_cand.shape
        if self.c_m_cand.shape != (n, m):
            raise ValueError("cost tables disagree on shape")
        if self.c_m_pos is None:
            self.c_m_pos = np.empty((n, 0))
        self.c_m_pos = np.asarray(self.c_m_pos, dtype=float)
        if self.own_candidate is None:
            if m < n:
                raise ValueError("own_candidate required when candidates != agents")
            self.own_candidate = np.arange(n)
        self.own_candidate = np.asarray(self.own_candidate, dtype=int)
        self.q_x = np.asarray(self.q_x, dtype=float)
        self.q_xr = np.asarray(self.q_xr, dtype=float)
        for name, tab in (("c_r_cand", self.c_r_cand), ("c_m_cand", self.c_m_cand), ("c_m_pos", self.c_m_pos)):
            if np.any(tab < 0):
                raise ValueError(f"{name} contains negative costs")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @property
    def n_agents(self) -> int:
        return self.c_r_cand.shape[0]

    @property
    def n_candidates(self) -> int:
        return self.c_r_cand.shape[1]

    @property
    def n_positives(self) -> int:
        return self.c_m_pos.shape[1]

    def own_cost(self) -> np.ndarray:
        """Subsidized cost of each agent's own action; +inf without one."""
        own = self.own_candidate
        cost = np.full(self.n_agents, np.inf)
        has = own >= 0
        cost[has] = (1.0 - self.alpha) * self.c_r_cand[has, own[has]]
        return cost


def build_geometric_instance(
    negatives: np.ndarray,
    positives: np.ndarray,
    clf: LinearClassifier,
    cm: CostModel,
    p: float,
    eps: float = 1e-6,
) -> tuple[GameInstance, np.ndarray]:
    """Instance from feature geometry; returns it with the candidate actions.

    Candidates are each negative agent's optimal action, one per agent, so
    column j belongs to agent j.
    """
    negatives = np.atleast_2d(np.asarray(negatives, dtype=float))
    positives = np.atleast_2d(np.asarray(positives, dtype=float)) if positives is not None and np.size(positives) else np.empty((0, negatives.shape[1]))
    base = cm.with_alpha(0.0)
    candidates = np.vstack([optimal_recourse(x, clf, base, eps) for x in negatives])
    inst = GameInstance(
        c_r_cand=recourse_cost_matrix(base, negatives, candidates),
        c_m_cand=manipulation_cost_matrix(base, negatives, candidates),
        c_m_pos=manipulation_cost_matrix(base, negatives, positives) if positives.shape[0] else None,
        q_x=np.asarray(clf.qualification(negatives), dtype=float),
        q_xr=np.asarray(clf.qualification(candidates), dtype=float),
        p=p,
        alpha=cm.alpha,
    )
    return inst, candidates


# ---------------------------------------------------------------------------
# Realized play and the three objectives
# ---------------------------------------------------------------------------

def realized_actions(
    instance: GameInstance,
    provided: set[int] | frozenset[int],
    revealed_cand: set[int] | frozenset[int],
    revealed_pos: np.ndarray | None = None,
) -> np.ndarray:
    """Per-agent choice (+1 recourse, -1 imitation, 0 nothing) for one draw.

    ``provided`` and ``revealed_cand`` hold candidate indices; ``revealed_pos``
    is a boolean mask over positive columns (None means all revealed).
    """
    n = instance.n_agents
    own = instance.own_candidate
    r = np.full(n, np.inf)
    has = (own >= 0) & np.isin(own, list(provided))
    r[has] = (1.0 - instance.alpha) * instance.c_r_cand[has, own[has]]

    m = np.full(n, np.inf)
    if revealed_cand:
        cols = sorted(revealed_cand)
        m = np.minimum(m, instance.c_m_cand[:, cols].min(axis=1))
    if instance.n_positives:
        mask = np.ones(instance.n_positives, dtype=bool) if revealed_pos is None else revealed_pos
        if mask.any():
            m = np.minimum(m, instance.c_m_pos[:, mask].min(axis=1))

    out = np.zeros(n, dtype=int)
    rec = (r < DO_NOTHING_CUTOFF) & (r <= m)
    man = ~rec & (m < DO_NOTHING_CUTOFF)
    out[rec] = 1
    out[man] = -1
    return out


def _deltas(instance: GameInstance, kinds: np.ndarray) -> float:
    gain = 2.0 * instance.q_xr - 1.0
    loss = 2.0 * instance.q_x - 1.0
    return float(np.sum(np.where(kinds == 1, gain, 0.0) + np.where(kinds == -1, loss, 0.0)))


def count_realized_actions(instance: GameInstance, chosen) -> tuple[int, int, int]:
    """(recourse, imitation, nothing) counts at certain disclosure."""
    kinds = realized_actions(instance, frozenset(chosen), frozenset(chosen), None)
    return int(np.sum(kinds == 1)), int(np.sum(kinds == -1)), int(np.sum(kinds == 0))


def expected_utility(chosen, instance: GameInstance, provided=None) -> float:
    """Expected sum of qualification deltas over disclosure draws.

    Small reveal pools are enumerated outcome by outcome; larger ones use the
    exact per-agent factorization (disclosure events are independent, so each
    agent's recourse-survival probability is a product over the targets that
    would divert it). ``provided`` defaults to ``chosen``: releasing an action
    both hands it to its agent and enters it in the disclosure draw.
    """
    chosen = sorted(set(chosen))
    provided = set(chosen) if provided is None else set(provided)
    if len(chosen) + instance.n_positives <= ENUMERATION_LIMIT:
        return enumeration_utility(chosen, instance, provided)
    return _factored_expectation(chosen, instance, provided, want="utility")


def enumeration_utility(chosen, instance: GameInstance, provided=None) -> float:
    """Exact expectation by summing over every disclosure outcome."""
    chosen = sorted(set(chosen))
    provided = set(chosen) if provided is None else set(provided)
    n_pos = instance.n_positives
    pool = len(chosen) + n_pos
    if pool > ENUMERATION_LIMIT:
        raise ValueError(f"reveal pool of {pool} exceeds enumeration limit {ENUMERATION_LIMIT}")
    p = instance.p
    total = 0.0
    for bits in itertools.product((0, 1), repeat=pool):
        k = sum(bits)
        prob = (p ** k) * ((1.0 - p) ** (pool - k))
        if prob == 0.0:
            continue
        rev_cand = {c for c, b in zip(chosen, bits[: len(chosen)]) if b}
        pos_mask = np.array(bits[len(chosen):], dtype=bool) if n_pos else None
        kinds = realized_actions(instance, provided, rev_cand, pos_mask)
        total += prob * _deltas(instance, kinds)
    return total


def _factored_expectation(chosen, instance: GameInstance, provided, want: str) -> float:
    """Per-agent product form; exact because disclosure events are independent."""
    p = instance.p
    n = instance.n_agents
    own = instance.own_candidate
    cols = sorted(chosen)
    c_m = instance.c_m_cand[:, cols] if cols else np.empty((n, 0))
    c_m_all = np.hstack([c_m, instance.c_m_pos]) if instance.n_positives else c_m

    r = np.full(n, np.inf)
    has = (own >= 0) & np.isin(own, list(provided))
    r[has] = (1.0 - instance.alpha) * instance.c_r_cand[has, own[has]]

    gain = 2.0 * instance.q_xr - 1.0
    loss = 2.0 * instance.q_x - 1.0
    total = 0.0
    for i in range(n):
        if r[i] < DO_NOTHING_CUTOFF:
            diverters = int(np.sum(c_m_all[i] < r[i]))
            p_rec = (1.0 - p) ** diverters
            if want == "utility":
                total += p_rec * gain[i] + (1.0 - p_rec) * loss[i]
            else:
                total += 1.0 - p_rec
        else:
            viable = int(np.sum(c_m_all[i] < DO_NOTHING_CUTOFF))
            p_man = 1.0 - (1.0 - p) ** viable
            if want == "utility":
                total += p_man * loss[i]
            else:
                total += p_man
    return total


def expected_manipulators(instance: GameInstance, chosen, provided=None) -> float:
    """Expected number of agents imitating, under the same play as the utility."""
    chosen = sorted(set(chosen))
    provided = set(chosen) if provided is None else set(provided)
    return _factored_expectation(chosen, instance, provided, want="manipulators")


def monte_carlo_utility(chosen, instance: GameInstance, samples: int, seed: int) -> tuple[float, float]:
    """Sampled estimate of the expected utility: (mean, standard error)."""
    chosen = sorted(set(chosen))
    provided = set(chosen)
    rng = np.random.default_rng(seed)
    n_pos = instance.n_positives
    vals = np.empty(samples)
    for s in range(samples):
        rev = {c for c in chosen if rng.random() < instance.p}
        pos_mask = (rng.random(n_pos) < instance.p) if n_pos else None
        kinds = realized_actions(instance, provided, rev, pos_mask)
        vals[s] = _deltas(instance, kinds)
    stderr = float(vals.std(ddof=1) / np.sqrt(samples)) if samples > 1 else float("inf")
    return float(vals.mean()), stderr


# ---------------------------------------------------------------------------
# Diverter sets and the coverage-style exposure objective
# ---------------------------------------------------------------------------

def manipulation_sets(instance: GameInstance) -> list[frozenset[int]]:
    """Candidate columns that would divert each agent from its own action.

    A column diverts agent i when imitating it beats min(1, own cost). The
    comparison is strict so that exact ties stay with the honest change.
    """
    own_cost = instance.own_cost()
    bound = np.minimum(DO_NOTHING_CUTOFF, own_cost)
    return [
        frozenset(np.flatnonzero(instance.c_m_cand[i] < bound[i]).tolist())
        for i in range(instance.n_agents)
    ]


def expected_manipulation_prob(instance: GameInstance, i: int, chosen, p: float | None = None,
                               sets: list[frozenset[int]] | None = None) -> float:
    """1 - (1-p)^overlap between agent i's diverter set and the released set."""
    p = instance.p if p is None else p
    s = (sets or manipulation_sets(instance))[i]
    overlap = len(s & set(chosen))
    return 1.0 - (1.0 - p) ** overlap


def total_manipulation_exposure(instance: GameInstance, chosen, p: float | None = None,
                                sets: list[frozenset[int]] | None = None) -> float:
    """Sum of per-agent diversion probabilities; diminishing in the released set."""
    p = instance.p if p is None else p
    sets = sets or manipulation_sets(instance)
    chosen = set(chosen)
    return float(sum(1.0 - (1.0 - p) ** len(s & chosen) for s in sets))


# ---------------------------------------------------------------------------
# Selection
# ---------------------------------------------------------------------------

def brute_force_select(instance: GameInstance, k: int, objective=None) -> tuple[tuple[int, ...], float]:
    """Exact maximizer of the objective over subsets of size at most k.

    Ties resolve to the lexicographically smallest candidate index tuple.
    Refuses instances beyond the enumerable size.
    """
    m = instance.n_candidates
    if m > BRUTE_FORCE_LIMIT:
        raise ValueError(f"{m} candidates exceed brute-force limit {BRUTE_FORCE_LIMIT}")
    objective = objective or (lambda subset: expected_utility(subset, instance))
    best: tuple[int, ...] = ()
    best_val = objective(())
    for size in range(1, min(k, m) + 1):
        for subset in itertools.combinations(range(m), size):
            val = objective(subset)
            if val > best_val:
                best, best_val = subset, val
    return best, best_val


def greedy_select(instance: GameInstance, k: int, objective=None) -> tuple[int, ...]:
    """Add the best marginal-gain candidate k times, ids breaking ties.

    Always performs min(k, m) additions so the released count is the
    experimental treatment even when late additions stop paying.
    """
    m = instance.n_candidates
    objective = objective or (lambda subset: expected_utility(subset, instance))
    chosen: list[int] = []
    current = objective(())
    for _ in range(min(k, m)):
        best_c, best_gain = None, -np.inf
        for c in range(m):
            if c in chosen:
                continue
            gain = objective(chosen + [c]) - current
            if gain > best_gain:
                best_c, best_gain = c, gain
        chosen.append(best_c)
        current += best_gain
    return tuple(sorted(chosen))


def local_search_select(instance: GameInstance, k: int, max_iters: int = 200, objective=None) -> tuple[int, ...]:
    """First-improvement add/drop/swap from the greedy start, |subset| <= k."""
    m = instance.n_candidates
    objective = objective or (lambda subset: expected_utility(subset, instance))
    current = set(greedy_select(instance, k, objective))
    value = objective(current)
    for _ in range(max_iters):
        improved = False
        if len(current) < k:
            for c in range(m):
                if c not in current:
                    val = objective(current | {c})
                    if val > value:
                        current, value, improved = current | {c}, val, True
                        break
        if not improved:
            for c in sorted(current):
                val = objective(current - {c})
                if val > value:
                    current, value, improved = current - {c}, val, True
                    break
        if not improved:
            for out in sorted(current):
                for inc in range(m):
                    if inc in current:
                        continue
                    val = objective(current - {out} | {inc})
                    if val > value:
                        current, value, improved = current - {out} | {inc}, val, True
                        break
                if improved:
                    break
        if not improved:
            break
    return tuple(sorted(current))


def random_k_select(instance: GameInstance, k: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Arbitrary released subset of size min(k, m); the unoptimized baseline."""
    m = instance.n_candidates
    k = min(k, m)
    return tuple(sorted(rng.choice(m, size=k, replace=False).tolist())) if k else ()


def recourse_count_p1(instance: GameInstance, chosen) -> int:
    """Number of agents taking their own action when disclosure is certain."""
    n_rec, _, _ = count_realized_actions(instance, chosen)
    return n_rec


def exact_ilp_p1(instance: GameInstance, k: int) -> tuple[tuple[int, ...], int]:
    """Exact recourse-count maximizer over released sets of size exactly k.

    Branch and bound over the binary release vector; the per-agent take-it
    variables are implied once the release is fixed (an agent takes its own
    action iff it is released, costs under the cutoff, and no released column
    imitates more cheaply). Requires certain disclosure.
    """
    if instance.p != 1.0:
        raise UnsupportedModeError("exact selection requires disclosure probability 1")
    m = instance.n_candidates
    if m > ILP_LIMIT:
        raise ValueError(f"{m} candidates exceed exact-solver limit {ILP_LIMIT}")
    if k > m:
        raise ValueError(f"budget {k} exceeds {m} candidates")

    n = instance.n_agents
    own = instance.own_candidate
    own_cost = instance.own_cost()
    pos_min = instance.c_m_pos.min(axis=1) if instance.n_positives else np.full(n, np.inf)

    # Agents that could ever take recourse: own action exists, under the
    # cutoff, and not undercut by always-revealed positive rows.
    base_ok = (own >= 0) & (own_cost < DO_NOTHING_CUTOFF) & (own_cost <= pos_min)

    best_val = -1
    best_set: tuple[int, ...] = ()

    def candidate_kills(c: int) -> np.ndarray:
        return instance.c_m_cand[:, c] < own_cost

    kills = np.vstack([candidate_kills(c) for c in range(m)]) if m else np.empty((0, n), dtype=bool)

    def dfs(idx: int, taken: list[int], alive: np.ndarray):
        nonlocal best_val, best_set
        # alive: agents whose recourse is not yet undercut by a taken column
        remaining = m - idx
        need = k - len(taken)
        if need > remaining:
            return
        if need == 0:
            taken_set = set(taken)
            ok = alive & base_ok & np.isin(own, taken)
            val = int(np.sum(ok))
            if val > best_val:
                best_val, best_set = val, tuple(taken)
            return
        # optimistic: every still-alive eligible agent whose own column is
        # taken or still free could end up performing recourse
        possible = alive & base_ok & (np.isin(own, taken) | (own >= idx))
        if int(np.sum(possible)) <= best_val:
            return
        dfs(idx + 1, taken + [idx], alive & ~kills[idx])
        dfs(idx + 1, taken, alive)

    dfs(0, [], np.ones(n, dtype=bool))
    return best_set, best_val


def min_manipulation_select(instance: GameInstance, k: int) -> tuple[tuple[int, ...], float]:
    """Exact minimizer of expected imitators over released sets of size k."""
    m = instance.n_candidates
    if m > BRUTE_FORCE_LIMIT:
        raise ValueError(f"{m} candidates exceed brute-force limit {BRUTE_FORCE_LIMIT}")
    k = min(k, m)
    best, best_val = None, np.inf
    for subset in itertools.combinations(range(m), k):
        val = expected_manipulators(instance, subset)
        if val < best_val:
            best, best_val = subset, val
    return tuple(best or ()), float(best_val)


# ---------------------------------------------------------------------------
# Hardness fixture: selecting k sets with minimum union, in game clothing
# ---------------------------------------------------------------------------

def mku_to_instance(universe: list, sets: list[set], k: int) -> GameInstance:
    """Synthetic instance whose imitation counts mirror a set-union problem.

    One agent per universe element, one candidate per set. An agent's own
    action is free while every other action is unaffordable as recourse, and
    imitating a released column is cheap exactly when the agent's element lies
    in its set. Released columns then trigger their own agent's recourse, and
    the imitator count at certain disclosure equals |union of released sets|
    minus the number released, provided each set contains its own element.
    """
    if not universe or not sets:
        raise ValueError("universe and sets must be nonempty")
    n, m = len(universe), len(sets)
    if m > n:
        raise ValueError("more sets than universe elements; no per-agent pairing")
    if not 0 <= k <= m:
        raise ValueError(f"budget {k} outside [0, {m}]")
    index = {s: i for i, s in enumerate(universe)}
    if len(index) != n:
        raise ValueError("universe elements must be distinct")

    c_r = np.ones((n, m))
    c_m = np.ones((n, m))
    for j, S in enumerate(sets):
        c_r[j, j] = 0.0
        for s in S:
            if s not in index:
                raise ValueError(f"set {j} contains {s!r} outside the universe")
            c_m[index[s], j] = 0.5

    own = np.array([i if i < m else -1 for i in range(n)])
    return GameInstance(
        c_r_cand=c_r,
        c_m_cand=c_m,
        q_x=np.zeros(n),
        q_xr=np.ones(n),
        p=1.0,
        own_candidate=own,
    )


def brute_force_min_k_union(universe: list, sets: list[set], k: int) -> tuple[tuple[int, ...], int]:
    """Smallest achievable union size over exactly k sets, by enumeration."""
    best, best_val = None, len(universe) + 1
    for subset in itertools.combinations(range(len(sets)), k):
        size = len(set().union(*(sets[j] for j in subset)) if subset else set())
        if size < best_val:
            best, best_val = subset, size
    return tuple(best or ()), best_val


# ---------------------------------------------------------------------------
# Plain-text instance round trip
# ---------------------------------------------------------------------------

def dump_instance(instance: GameInstance, path):
    def rows(tab):
        return [" ".join(repr(float(v)) for v in row) for row in tab]

    lines = [
        f"p {repr(float(instance.p))}",
        f"alpha {repr(float(instance.alpha))}",
        f"agents {instance.n_agents}",
        f"candidates {instance.n_candidates}",
        f"positives {instance.n_positives}",
        "own " + " ".join(str(int(v)) for v in instance.own_candidate),
        "q_x " + " ".join(repr(float(v)) for v in instance.q_x),
        "q_xr " + " ".join(repr(float(v)) for v in instance.q_xr),
        "table c_r_cand",
        *rows(instance.c_r_cand),
        "table c_m_cand",
        *rows(instance.c_m_cand),
    ]
    if instance.n_positives:
        lines.append("table c_m_pos")
        lines.extend(rows(instance.c_m_pos))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_instance(path) -> GameInstance:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    scalars: dict[str, str] = {}
    vectors: dict[str, list[float]] = {}
    tables: dict[str, list[list[float]]] = {}
    current = None
    for ln in lines:
        head, _, rest = ln.partition(" ")
        if head == "table":
            current = rest
            tables[current] = []
        elif current is not None and head not in ("p", "alpha", "agents", "candidates", "positives", "own", "q_x", "q_xr"):
            tables[current].append([float(v) for v in ln.split()])
        elif head in ("own", "q_x", "q_xr"):
            vectors[head] = [float(v) for v in rest.split()]
            current = None
        else:
            scalars[head] = rest
            current = None
    n_pos = int(scalars["positives"])
    return GameInstance(
        c_r_cand=np.array(tables["c_r_cand"]),
        c_m_cand=np.array(tables["c_m_cand"]),
        c_m_pos=np.array(tables["c_m_pos"]) if n_pos else None,
        q_x=np.array(vectors["q_x"]),
        q_xr=np.array(vectors["q_xr"]),
        p=float(scalars["p"]),
        alpha=float(scalars["alpha"]),
        own_candidate=np.array(vectors["own"], dtype=int),
    )
