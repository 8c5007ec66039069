"""Pure-Python brute-force coloring scan (fallback kernel).

Mirrors the compiled kernel exactly: walk every assignment of quandle
elements to edges in lexicographic order and keep those satisfying all
crossing constraints.  No propagation, no pruning beyond the early exit
on the first violated crossing -- this is the independent oracle the
production enumerator is checked against.
"""

from __future__ import annotations


def filter_colorings(n, num_edges, classical, virtual, table, ldiv, fplus, fminus):
    """All satisfying edge colorings, as a lexicographically sorted list.

    classical: list of (sign, under_in, over_in, under_out, over_out)
    virtual:   list of (chirality, first_in, first_out, second_in, second_out)
    table, ldiv: n x n operation and left-division tables
    fplus, fminus: the twist permutation and its inverse
    """
    if num_edges == 0:
        return [()]
    out = []
    colors = [0] * num_edges
    while True:
        ok = True
        for sign, u_in, o_in, u_out, o_out in classical:
            o = colors[o_in]
            if colors[o_out] != o:
                ok = False
                break
            if sign > 0:
                if colors[u_out] != table[colors[u_in]][o]:
                    ok = False
                    break
            elif colors[u_out] != ldiv[colors[u_in]][o]:
                ok = False
                break
        if ok:
            for ch, f_in, f_out, s_in, s_out in virtual:
                if ch > 0:
                    if colors[f_out] != fminus[colors[f_in]] or colors[s_out] != fplus[colors[s_in]]:
                        ok = False
                        break
                elif colors[f_out] != fplus[colors[f_in]] or colors[s_out] != fminus[colors[s_in]]:
                    ok = False
                    break
        if ok:
            out.append(tuple(colors))
        # odometer increment, last edge fastest
        i = num_edges - 1
        while i >= 0 and colors[i] == n - 1:
            colors[i] = 0
            i -= 1
        if i < 0:
            return out
        colors[i] += 1
