"""Finite prefix-closed trees of natural-number sequences.

Carries the rank machinery (recursive and leaf-stripping, which agree on
finite trees), the Kleene-Brouwer order, the Ord of a finite subset system
together with its increasing-sequence tree, and empirical dimension trees
built from exact solver verdicts.

Conventions fixed here: the empty tree has no rank (None is returned); in
the KB order a proper extension precedes its prefix, so children precede
parents and ranks can be folded in KB order without recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import BudgetExhaustedError, InvalidInputError
from .solver import DEFAULT_NODE_BUDGET, solve_s_cover
from .spaces import FiniteMetricSpace

Node = Tuple[int, ...]


@dataclass(frozen=True)
class FinTree:
    """Finite set of finite sequences, closed under prefixes."""

    nodes: frozenset

    def __post_init__(self):
        for s in self.nodes:
            if s and s[:-1] not in self.nodes:
                raise InvalidInputError(f"not prefix-closed at {s}")

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def __contains__(self, node) -> bool:
        return tuple(node) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def children(self, node: Node) -> list:
        out = [s for s in self.nodes if len(s) == len(node) + 1 and s[: len(node)] == node]
        return sorted(out)

    def is_leaf(self, node: Node) -> bool:
        node = tuple(node)
        k = len(node)
        return not any(len(s) == k + 1 and s[:k] == node for s in self.nodes)

    def sorted_nodes(self) -> list:
        return sorted(self.nodes)


def tree_from_sequences(seqs: Iterable[Sequence[int]]) -> FinTree:
    """Prefix closure of the given sequences (empty input gives the empty tree)."""
    nodes = set()
    for s in seqs:
        s = tuple(int(x) for x in s)
        for k in range(len(s) + 1):
            nodes.add(s[:k])
    return FinTree(frozenset(nodes))


def node_ranks_recursive(t: FinTree) -> Dict[Node, int]:
    """rank(s) = 0 on leaves, else 1 + max over children."""
    ranks: Dict[Node, int] = {}
    for s in sorted(t.nodes, key=len, reverse=True):
        kids = [ranks[c] for c in t.children(s)]
        ranks[s] = 1 + max(kids) if kids else 0
    return ranks


def rank_recursive(t: FinTree) -> Optional[int]:
    if t.is_empty:
        return None
    return node_ranks_recursive(t)[()]


def node_levels(t: FinTree) -> Dict[Node, int]:
    """Iterated leaf stripping: level 0 = leaves, level a = leaves of what
    remains after stripping all lower levels."""
    remaining = set(t.nodes)
    levels: Dict[Node, int] = {}
    level = 0
    while remaining:
        prefixes = {s[:-1] for s in remaining if s}
        leaves = [s for s in remaining if s not in prefixes]
        for s in leaves:
            levels[s] = level
        remaining.difference_update(leaves)
        level += 1
    return levels


def rank_levels(t: FinTree) -> Optional[int]:
    if t.is_empty:
        return None
    return node_levels(t)[()]


def kb_compare(s: Sequence[int], t: Sequence[int]) -> int:
    """Kleene-Brouwer order: -1 when s precedes t, 0 on equality, 1 after.

    s precedes t when s properly extends t, or the first differing entry of
    s is smaller."""
    s = tuple(s)
    t = tuple(t)
    for a, b in zip(s, t):
        if a != b:
            return -1 if a < b else 1
    if len(s) == len(t):
        return 0
    return -1 if len(s) > len(t) else 1


def kb_sorted(nodes: Iterable[Sequence[int]]) -> list:
    import functools

    return sorted((tuple(n) for n in nodes), key=functools.cmp_to_key(kb_compare))


# ---------------------------------------------------------------------------
# subset systems and their increasing-sequence trees


@dataclass(frozen=True)
class OrdSet:
    """A finite system of finite nonempty subsets of a finite ground set."""

    members: frozenset  # frozenset of frozensets of ints
    ground: tuple       # sorted ground set

    def __post_init__(self):
        for m in self.members:
            if not m:
                raise InvalidInputError("members must be nonempty")
            if not set(m) <= set(self.ground):
                raise InvalidInputError(f"member {sorted(m)} leaves the ground set")


def ord_set_from(members: Iterable[Iterable[int]], ground: Iterable[int]) -> OrdSet:
    return OrdSet(
        frozenset(frozenset(int(x) for x in m) for m in members),
        tuple(sorted(set(int(x) for x in ground))),
    )


def restrict(m: OrdSet, sigma: Iterable[int]) -> OrdSet:
    """M^sigma: members containing sigma, with sigma removed; the remainder
    must be nonempty and disjoint from sigma."""
    sig = frozenset(int(x) for x in sigma)
    out = set()
    for mem in m.members:
        if sig <= mem:
            tau = mem - sig
            if tau:
                out.add(tau)
    return OrdSet(frozenset(out), m.ground)


def ord_set(m: OrdSet) -> int:
    """Ord of a finite system: 0 on the empty system, else
    1 + max over ground elements a of Ord(M^a)."""

    ground = m.ground

    @lru_cache(maxsize=None)
    def go(members: frozenset) -> int:
        if not members:
            return 0
        best = 0
        for a in ground:
            sub = frozenset(mem - {a} for mem in members if a in mem and len(mem) > 1)
            best = max(best, go(sub))
        return best + 1

    return go(m.members)


def ta_tree(m: OrdSet) -> FinTree:
    """Tree of strictly increasing sequences over the ground set: a sequence
    belongs iff the restriction at its parent is nonempty.  Empty system
    gives the empty tree; the root rank equals ord_set."""
    if not m.members:
        return FinTree(frozenset())
    nodes = {()}
    frontier = [()]
    while frontier:
        sigma = frontier.pop()
        rest = restrict(m, sigma)
        if rest.members:
            start = sigma[-1] if sigma else None
            for a in m.ground:
                if start is not None and a <= start:
                    continue
                child = sigma + (a,)
                nodes.add(child)
                frontier.append(child)
    return FinTree(frozenset(nodes))


# ---------------------------------------------------------------------------
# tree embeddings


def canonical_increasing_embed(s: Sequence[int]) -> Node:
    """Pointwise-least strictly increasing sequence dominating s, same length."""
    out: list = []
    for x in s:
        x = int(x)
        if out and x <= out[-1]:
            out.append(out[-1] + 1)
        else:
            out.append(x)
    return tuple(out)


def check_t_embedding(f: Mapping[Node, Node], src: FinTree, dst: FinTree) -> bool:
    """Length-preserving, prefix-preserving, image inside dst."""
    for s in src.nodes:
        if s not in f:
            return False
        fs = tuple(f[s])
        if len(fs) != len(s):
            return False
        if fs not in dst.nodes:
            return False
        if s:
            parent_img = tuple(f[s[:-1]])
            if fs[: len(parent_img)] != parent_img:
                return False
    return True


def embed_tree(src: FinTree) -> tuple:
    """Node-wise canonical increasing embedding; returns (map, image tree)."""
    mapping = {s: canonical_increasing_embed(s) for s in src.nodes}
    image = tree_from_sequences(mapping.values()) if src.nodes else FinTree(frozenset())
    return mapping, image


def subtree_matrix(t: FinTree, root: Sequence[int]) -> FinTree:
    """Suffix tree at the root, re-indexed from the empty sequence."""
    root = tuple(int(x) for x in root)
    if root not in t.nodes:
        raise InvalidInputError(f"{root} is not a node")
    k = len(root)
    return FinTree(frozenset(s[k:] for s in t.nodes if s[:k] == root))


# ---------------------------------------------------------------------------
# empirical dimension trees


@dataclass(frozen=True)
class EmpiricalTreeConfig:
    rmax: int
    lmax: int
    bound: int
    variant: str = "any"  # any | nondecreasing | strictly-increasing
    mode: str = "exact"
    budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        if self.rmax < 1 or self.lmax < 1:
            raise InvalidInputError("rmax and lmax must be >= 1")
        if self.variant not in ("any", "nondecreasing", "strictly-increasing"):
            raise InvalidInputError(f"unknown variant {self.variant!r}")
        if self.mode != "exact":
            raise InvalidInputError("empirical trees require exact verdicts")


def _variant_ok(seq: Node, variant: str) -> bool:
    if variant == "nondecreasing":
        return all(b >= a for a, b in zip(seq, seq[1:]))
    if variant == "strictly-increasing":
        return all(b > a for a, b in zip(seq, seq[1:]))
    return True


def empirical_dim_tree(space: FiniteMetricSpace, cfg: EmpiricalTreeConfig) -> FinTree:
    """All demand sequences within the caps whose cover problem is UNSAT at
    the configured bound.  Infeasibility is antitone in the demands, so the
    result is prefix-closed by construction; the builder still verifies the
    closure and treats a violation as a solver bug.

    The root is included only when some sequence is infeasible: a space all
    of whose capped sequences are coverable yields the empty tree.
    """
    verdict_cache: dict = {}

    def unsat(seq: Node) -> bool:
        if seq in verdict_cache:
            return verdict_cache[seq]
        res = solve_s_cover(space, seq, cfg.bound, mode="exact", budget=cfg.budget)
        if res.status == "UNKNOWN":
            raise BudgetExhaustedError(
                f"exact verdict for {seq} exceeded the node budget"
            )
        verdict_cache[seq] = res.status == "UNSAT"
        return verdict_cache[seq]

    members = []
    # depth-first over the sequence lattice; prefix SAT prunes all extensions
    def extend(prefix: Node):
        for v in range(1, cfg.rmax + 1):
            seq = prefix + (v,)
            if not _variant_ok(seq, cfg.variant):
                continue
            if unsat(seq):
                members.append(seq)
                if len(seq) < cfg.lmax:
                    extend(seq)

    extend(())
    tree = tree_from_sequences(members)
    for s in tree.nodes:
        if s and not unsat(s):  # closure audit; cannot fire if the solver is sound
            raise AssertionError(f"prefix {s} of an infeasible sequence is feasible")
    return tree
