"""Pure-Python satisfiability kernels for encoded literal conjuncts.

Nodes are integers: free variables occupy ``0 .. n_vars-1``, parameters come
after.  Distinct parameter nodes always denote distinct elements (callers
canonicalise any declared identifications first).  Literal lists are flat
pair sequences ``[u0, v0, u1, v1, ...]``.

The same functions exist in the compiled extension; keep signatures in sync.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def _find(uf: list[int], x: int) -> int:
    root = x
    while uf[root] != root:
        root = uf[root]
    while uf[x] != root:
        uf[x], x = root, uf[x]
    return root


def _merge_equalities(n_vars: int, n_total: int, eqs: list[int]) -> list[int] | None:
    """Union nodes along ``eqs``; None when two distinct parameters collide."""
    uf = list(range(n_total))
    for i in range(0, len(eqs), 2):
        ra, rb = _find(uf, eqs[i]), _find(uf, eqs[i + 1])
        if ra == rb:
            continue
        # keep parameter nodes as roots so collisions are visible
        if ra >= n_vars and rb >= n_vars:
            return None
        if rb >= n_vars:
            ra, rb = rb, ra
        uf[rb] = ra
    return uf


def pure_sat(n_vars: int, n_params: int, eqs: list[int], neqs: list[int]) -> bool:
    uf = _merge_equalities(n_vars, n_vars + n_params, eqs)
    if uf is None:
        return False
    for i in range(0, len(neqs), 2):
        if _find(uf, neqs[i]) == _find(uf, neqs[i + 1]):
            return False
    return True


def eqrel_sat(
    n_vars: int,
    labels: list[int],
    eqs: list[int],
    neqs: list[int],
    pos: list[int],
    neg: list[int],
) -> bool:
    """Equivalence relation with unboundedly many unbounded classes.

    ``labels[i]`` is the declared class of parameter node ``n_vars + i``;
    ``pos``/``neg`` demand same-class / different-class.
    """
    n_params = len(labels)
    n_total = n_vars + n_params
    uf = _merge_equalities(n_vars, n_total, eqs)
    if uf is None:
        return False
    for i in range(0, len(neqs), 2):
        if _find(uf, neqs[i]) == _find(uf, neqs[i + 1]):
            return False
    # class-level union-find over element roots
    cuf = list(range(n_total))
    first_of_label: dict[int, int] = {}
    for p in range(n_params):
        node = _find(uf, n_vars + p)
        label = labels[p]
        if label in first_of_label:
            ra, rb = _find(cuf, first_of_label[label]), _find(cuf, node)
            if ra != rb:
                cuf[rb] = ra
        else:
            first_of_label[label] = node
    for i in range(0, len(pos), 2):
        ra = _find(cuf, _find(uf, pos[i]))
        rb = _find(cuf, _find(uf, pos[i + 1]))
        if ra != rb:
            cuf[rb] = ra
    for i in range(0, len(neg), 2):
        if _find(cuf, _find(uf, neg[i])) == _find(cuf, _find(uf, neg[i + 1])):
            return False
    # distinct declared labels can never share a class
    reps = list(first_of_label.values())
    for i in range(len(reps)):
        ri = _find(cuf, reps[i])
        for j in range(i + 1, len(reps)):
            if ri == _find(cuf, reps[j]):
                return False
    return True


def graph_sat(
    n_vars: int,
    n_params: int,
    adj: bytes,
    eqs: list[int],
    neqs: list[int],
    pos: list[int],
    neg: list[int],
) -> bool:
    """Random graph: symmetric irreflexive edges plus extension axioms.

    ``adj`` is the row-major adjacency matrix between parameter nodes; every
    demand not contradicting it (or itself) is realisable.
    """
    n_total = n_vars + n_params
    uf = _merge_equalities(n_vars, n_total, eqs)
    if uf is None:
        return False
    for i in range(0, len(neqs), 2):
        if _find(uf, neqs[i]) == _find(uf, neqs[i + 1]):
            return False
    demands: dict[tuple[int, int], bool] = {}
    for kind, lits in ((True, pos), (False, neg)):
        for i in range(0, len(lits), 2):
            ra, rb = _find(uf, lits[i]), _find(uf, lits[i + 1])
            if ra == rb:
                if kind:
                    return False  # irreflexive
                continue  # a non-edge to oneself always holds
            if ra >= n_vars and rb >= n_vars:
                edge = adj[(ra - n_vars) * n_params + (rb - n_vars)] != 0
                if edge != kind:
                    return False
                continue
            key = (ra, rb) if ra < rb else (rb, ra)
            seen = demands.get(key)
            if seen is None:
                demands[key] = kind
            elif seen != kind:
                return False
    return True
