"""The matching order on multipartitions of n.

lambda <= mu holds when the boxes of lambda can be matched bijectively
onto the boxes of mu with every box weakly below its image in the box
order.  Decided by maximum bipartite matching; boxes in different
comparability classes never share an edge, so the graph is pruned by
content class first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .boxorder import Params, box_leq, box_less, content_class_key
from .combinatorics import Box, Multipartition, boxes, enumerate_multipartitions
from .poset import Relation


@dataclass
class OrderInstance:
    """The order on all ell-multipartitions of n for fixed parameters."""

    p: Params
    n: int
    tiebreak: bool = False
    labels: tuple[Multipartition, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("need n >= 0")
        self.labels = tuple(enumerate_multipartitions(self.p.ell, self.n))

    @property
    def ell(self) -> int:
        return self.p.ell


def _check_pair(inst: OrderInstance, lam: Multipartition, mu: Multipartition) -> None:
    if lam.ell != inst.ell or mu.ell != inst.ell:
        raise ValueError("multipartition has the wrong number of components")
    if lam.n != inst.n or mu.n != inst.n:
        raise ValueError("multipartition has the wrong size")


def _adjacency(inst: OrderInstance, lam: Multipartition, mu: Multipartition):
    """Edge lists from boxes(lam) to boxes(mu), pruned by content class."""
    left, right = boxes(lam), boxes(mu)
    by_class: dict = {}
    for idx, box in enumerate(right):
        by_class.setdefault(content_class_key(inst.p, box), []).append(idx)
    adj = []
    for box in left:
        candidates = by_class.get(content_class_key(inst.p, box), ())
        adj.append(
            [
                idx
                for idx in candidates
                if box == right[idx]
                or box_less(inst.p, box, right[idx], inst.tiebreak)
            ]
        )
    return adj, len(right)


def _max_matching_size(adj: list[list[int]], n_right: int) -> int:
    """Maximum bipartite matching via augmenting paths."""
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    size = 0
    for u in range(len(adj)):
        if augment(u, [False] * n_right):
            size += 1
    return size


def leq_p(inst: OrderInstance, lam: Multipartition, mu: Multipartition) -> bool:
    """Whether lam <= mu in the matching order."""
    _check_pair(inst, lam, mu)
    adj, n_right = _adjacency(inst, lam, mu)
    if any(not edges for edges in adj):
        return False
    return _max_matching_size(adj, n_right) == inst.n


def leq_p_oracle(
    inst: OrderInstance, lam: Multipartition, mu: Multipartition, bound: int = 6
) -> bool:
    """Exhaustive check over all bijections between the two box sets.

    Only the box predicate is shared with leq_p; the matching algorithm
    is not involved.
    """
    _check_pair(inst, lam, mu)
    if inst.n > bound:
        raise ValueError(f"oracle limited to n <= {bound}")
    left, right = boxes(lam), boxes(mu)
    return any(
        all(
            box_leq(inst.p, a, b, inst.tiebreak)
            for a, b in zip(left, image)
        )
        for image in permutations(right)
    )


def _relation_row(inst: OrderInstance, row_index: int) -> tuple[bool, ...]:
    lam = inst.labels[row_index]
    return tuple(leq_p(inst, lam, mu) for mu in inst.labels)


def relation_p(inst: OrderInstance, workers: int = 1) -> Relation:
    """The full order relation as a dense matrix over the canonical labels."""
    indices = range(len(inst.labels))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_relation_row_task, ((inst, k) for k in indices)))
    else:
        rows = [_relation_row(inst, k) for k in indices]
    return Relation(tuple(mp.parts for mp in inst.labels), tuple(rows))


def _relation_row_task(args) -> tuple[bool, ...]:
    inst, row_index = args
    return _relation_row(inst, row_index)
