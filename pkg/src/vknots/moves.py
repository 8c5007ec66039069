"""Local rewriting of diagrams and the randomized equivalence fuzzer.

Implemented rewrites:

  r1_insert / r1_remove      classical kink (any sign, either passage order)
  r2_insert / r2_remove      strand poke: two opposite-sign classical
                             crossings (parallel and antiparallel bigons
                             are both removable)
  r3_slide                   triangle flip across three classical
                             crossings; sites are accepted only when the
                             over/under pattern, strand directions and
                             signs are jointly realizable by a planar
                             triangle (precomputed variant table)
  vkink_insert / vkink_remove virtual kink (any chirality)
  detour                     delete the virtual passages of a strand
                             segment and re-route it across a given list
                             of (edge, chirality) targets

The fuzzer never applies an arbitrary detour: it draws from instance
families whose effect on twisted colorings is understood exactly --
poke insertion/removal with cancelling chiralities, sliding a virtual
passage across an adjacent virtual crossing, and sliding a consecutive
pair of virtual passages past a classical crossing (the semi-virtual
slide, gated by ``allow_semi_virtual``).  The semi-virtual slide
additionally requires the two route chiralities p, q to satisfy
p*q = side_a*side_b, where a side is +1 when the route crosses the
incoming half of the classical crossing's strand; other combinations do
not arise from a planar slide and do not preserve twisted colorings.

After every move the edge labels are renumbered canonically (successor
traversal from the lowest surviving label) and the crossing list is
sorted, so structural equality of move outputs is meaningful;
``diagram.isomorphic`` decides equality up to relabelling in tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product

from .diagram import (
    ClassicalCrossing,
    VirtualCrossing,
    VirtualDiagram,
    relabel_canonical,
    slot_maps,
    strand_passages,
)
from .errors import InvalidParameter, NotApplicable

LOOP = "loop"  # site value standing for "a free loop" in kink insertions


# ---------------------------------------------------------------------------
# slot surgery helpers


def _passage_edges(c, role):
    if role == "under":
        return c.under_in, c.under_out
    if role == "over":
        return c.over_in, c.over_out
    if role == "first":
        return c.first_in, c.first_out
    return c.second_in, c.second_out


def _with_in_slot(c, role, edge):
    if isinstance(c, ClassicalCrossing):
        if role == "under":
            return ClassicalCrossing(c.sign, edge, c.over_in, c.under_out, c.over_out)
        return ClassicalCrossing(c.sign, c.under_in, edge, c.under_out, c.over_out)
    if role == "first":
        return VirtualCrossing(edge, c.first_out, c.second_in, c.second_out, c.chirality)
    return VirtualCrossing(c.first_in, c.first_out, edge, c.second_out, c.chirality)


def _rewire_consumer(crossings, edge, new_edge):
    """Replace the unique in-slot occurrence of ``edge`` by ``new_edge``."""
    for i, c in enumerate(crossings):
        for role, e_in, _ in strand_passages(c):
            if e_in == edge:
                crossings[i] = _with_in_slot(c, role, new_edge)
                return
    raise NotApplicable(f"edge {edge} has no consumer")


def _remove_crossings(d: VirtualDiagram, remove: set[int]):
    """Delete crossings, merging the through-edges of every deleted passage.

    Returns (surviving crossing list with merged labels, free loops gained,
    find) where ``find`` maps any original edge to its merged representative.
    """
    parent: dict[int, int] = {}

    def find(e: int) -> int:
        root = e
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(e, e) != root:
            parent[e], e = root, parent[e]
        return root

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
        parent.setdefault(ra, ra)

    touched: set[int] = set()
    for ci in remove:
        for _, e_in, e_out in strand_passages(d.crossings[ci]):
            union(e_in, e_out)
            touched.add(e_in)
            touched.add(e_out)

    def rewrite(c):
        if isinstance(c, ClassicalCrossing):
            return ClassicalCrossing(
                c.sign, find(c.under_in), find(c.over_in), find(c.under_out), find(c.over_out)
            )
        return VirtualCrossing(
            find(c.first_in), find(c.first_out), find(c.second_in), find(c.second_out), c.chirality
        )

    survivors = [rewrite(c) for ci, c in enumerate(d.crossings) if ci not in remove]
    referenced = set()
    for c in survivors:
        for _, e_in, e_out in strand_passages(c):
            referenced.add(e_in)
            referenced.add(e_out)
    closed = {find(e) for e in touched} - referenced
    return survivors, len(closed), find


# ---------------------------------------------------------------------------
# classical kinks


def r1_insert(d: VirtualDiagram, edge, sign: int, handed: str = "under") -> VirtualDiagram:
    """Insert a classical kink on an edge, or onto a free loop (edge=None).

    ``handed`` selects which passage the incoming strand takes first.
    """
    if sign not in (1, -1):
        raise InvalidParameter("kink sign must be +1 or -1")
    if handed not in ("under", "over"):
        raise InvalidParameter("handed must be 'under' or 'over'")
    a, b = d.edges, d.edges + 1
    if edge is None:
        if d.free_loops < 1:
            raise NotApplicable("no free loop to kink")
        if handed == "under":
            kink = ClassicalCrossing(sign, under_in=a, over_in=b, under_out=b, over_out=a)
        else:
            kink = ClassicalCrossing(sign, under_in=b, over_in=a, under_out=a, over_out=b)
        return relabel_canonical(list(d.crossings) + [kink], d.free_loops - 1)
    if not 0 <= edge < d.edges:
        raise InvalidParameter(f"edge {edge} out of range")
    crossings = list(d.crossings)
    _rewire_consumer(crossings, edge, b)
    if handed == "under":
        kink = ClassicalCrossing(sign, under_in=edge, over_in=a, under_out=a, over_out=b)
    else:
        kink = ClassicalCrossing(sign, under_in=a, over_in=edge, under_out=b, over_out=a)
    crossings.append(kink)
    return relabel_canonical(crossings, d.free_loops)


def find_r1_sites(d: VirtualDiagram) -> list[int]:
    """Loop edges of removable classical kinks."""
    sites = []
    for c in d.crossings:
        if isinstance(c, ClassicalCrossing):
            if c.under_out == c.over_in:
                sites.append(c.under_out)
            elif c.over_out == c.under_in:
                sites.append(c.over_out)
    return sorted(set(sites))


def r1_remove(d: VirtualDiagram, loop_edge: int) -> VirtualDiagram:
    """Remove the classical kink whose loop edge is given."""
    for ci, c in enumerate(d.crossings):
        if isinstance(c, ClassicalCrossing) and (
            c.under_out == loop_edge == c.over_in or c.over_out == loop_edge == c.under_in
        ):
            survivors, gained, _ = _remove_crossings(d, {ci})
            return relabel_canonical(survivors, d.free_loops + gained)
    raise NotApplicable(f"edge {loop_edge} is not the loop of a classical kink")


# ---------------------------------------------------------------------------
# classical pokes


def r2_insert(d: VirtualDiagram, edge_a: int, edge_b: int, over_first: bool = True) -> VirtualDiagram:
    """Poke edge_a across edge_b: two new opposite-sign classical crossings.

    With ``over_first`` the a-strand passes over the b-strand at both new
    crossings, otherwise under.
    """
    if edge_a == edge_b:
        raise InvalidParameter("poke needs two distinct edges")
    for e in (edge_a, edge_b):
        if not 0 <= e < d.edges:
            raise InvalidParameter(f"edge {e} out of range")
    m1, m2, k1, k2 = d.edges, d.edges + 1, d.edges + 2, d.edges + 3
    crossings = list(d.crossings)
    _rewire_consumer(crossings, edge_a, m2)
    _rewire_consumer(crossings, edge_b, k2)
    if over_first:
        x1 = ClassicalCrossing(1, under_in=edge_b, over_in=edge_a, under_out=k1, over_out=m1)
        x2 = ClassicalCrossing(-1, under_in=k1, over_in=m1, under_out=k2, over_out=m2)
    else:
        x1 = ClassicalCrossing(1, under_in=edge_a, over_in=edge_b, under_out=m1, over_out=k1)
        x2 = ClassicalCrossing(-1, under_in=m1, over_in=k1, under_out=m2, over_out=k2)
    crossings.extend((x1, x2))
    return relabel_canonical(crossings, d.free_loops)


def find_r2_sites(d: VirtualDiagram) -> list[int]:
    """Over-strand middle edges of removable pokes."""
    consumed, emitted = slot_maps(d)
    sites = []
    for mid in range(d.edges):
        ei, ri = emitted.get(mid, (None, None))
        cj, rj = consumed.get(mid, (None, None))
        if ri != "over" or rj != "over" or ei == cj:
            continue
        x1, x2 = d.crossings[ei], d.crossings[cj]
        if not (isinstance(x1, ClassicalCrossing) and isinstance(x2, ClassicalCrossing)):
            continue
        if x1.sign == x2.sign:
            continue
        if x1.under_out == x2.under_in or x2.under_out == x1.under_in:
            sites.append(mid)
    return sites


def r2_remove(d: VirtualDiagram, over_mid: int) -> VirtualDiagram:
    """Remove the poke whose over-strand middle edge is given."""
    if over_mid not in find_r2_sites(d):
        raise NotApplicable(f"edge {over_mid} is not the over-middle of a poke")
    consumed, emitted = slot_maps(d)
    remove = {emitted[over_mid][0], consumed[over_mid][0]}
    survivors, gained, _ = _remove_crossings(d, remove)
    return relabel_canonical(survivors, d.free_loops + gained)


# ---------------------------------------------------------------------------
# triangle slide

# Realizable triangle variants, generated from planar geometry: three
# oriented lines pairwise crossing, all height orders, both mirror
# images.  A variant records, for the canonical strand roles
#   strand 1 through crossings (X, Y), strand 2 through (X, Z),
#   strand 3 through (Z, Y),
# which crossing each strand passes first, which strand is over at each
# crossing, and the three crossing signs.


def _r3_variant_table() -> frozenset:
    lines = {0: (1.0, 0.0), 1: (1.0, 1.0), 2: (1.0, -1.0)}
    meet = {
        frozenset((0, 1)): (0.0, 0.0),
        frozenset((0, 2)): (1.0, 0.0),
        frozenset((1, 2)): (0.5, 0.5),
    }
    table = set()
    for assignment in permutations((0, 1, 2)):  # strand role i+1 -> line assignment[i]
        line = {1: assignment[0], 2: assignment[1], 3: assignment[2]}
        px = meet[frozenset((line[1], line[2]))]
        py = meet[frozenset((line[1], line[3]))]
        pz = meet[frozenset((line[2], line[3]))]
        for eps in product((1, -1), repeat=3):
            dirs = {
                i: (eps[i - 1] * lines[line[i]][0], eps[i - 1] * lines[line[i]][1])
                for i in (1, 2, 3)
            }

            def param(point, i):
                return point[0] * dirs[i][0] + point[1] * dirs[i][1]

            firsts = (
                0 if param(px, 1) < param(py, 1) else 1,
                0 if param(px, 2) < param(pz, 2) else 1,
                0 if param(pz, 3) < param(py, 3) else 1,
            )
            for ranks in permutations((1, 2, 3)):  # position in tuple = height rank
                height = {s: ranks.index(s) for s in (1, 2, 3)}
                overs = (
                    1 if height[1] > height[2] else 0,
                    1 if height[1] > height[3] else 0,
                    1 if height[2] > height[3] else 0,
                )

                def det(i, j):
                    return dirs[i][0] * dirs[j][1] - dirs[i][1] * dirs[j][0]

                def sgn(i, j, over_ij):
                    d_val = det(i, j) if over_ij else det(j, i)
                    return 1 if d_val > 0 else -1

                signs = (
                    sgn(1, 2, overs[0]),
                    sgn(1, 3, overs[1]),
                    sgn(2, 3, overs[2]),
                )
                for mirror in (1, -1):
                    table.add(
                        firsts + overs + tuple(mirror * s for s in signs)
                    )
    return frozenset(table)


_R3_VARIANTS = _r3_variant_table()


@dataclass(frozen=True)
class _R3Site:
    crossings: tuple[int, int, int]  # indices of X, Y, Z
    bridges: tuple[int, int, int]  # edges strand1: X<->Y, strand2: X<->Z, strand3: Z<->Y
    # per strand: (first crossing idx, second crossing idx, role at first, role at second)
    strands: tuple[tuple[int, int, str, str], ...]


def _resolve_r3_site(d: VirtualDiagram, bridges) -> _R3Site | None:
    if len(set(bridges)) != 3:
        return None
    consumed, emitted = slot_maps(d)
    p = min(bridges)
    rest = sorted(set(bridges) - {p})
    for q, r in (rest, rest[::-1]):
        ends = {}
        ok = True
        for e in (p, q, r):
            if e not in emitted or e not in consumed:
                ok = False
                break
            ends[e] = (emitted[e], consumed[e])
        if not ok:
            continue
        crossings_of = {e: {ends[e][0][0], ends[e][1][0]} for e in (p, q, r)}
        if any(len(cs) != 2 for cs in crossings_of.values()):
            continue
        common_pq = crossings_of[p] & crossings_of[q]
        if len(common_pq) != 1:
            continue
        x = common_pq.pop()
        y = (crossings_of[p] - {x}).pop()
        z = (crossings_of[q] - {x}).pop()
        if crossings_of[r] != {z, y} or len({x, y, z}) != 3:
            continue
        if not all(isinstance(d.crossings[ci], ClassicalCrossing) for ci in (x, y, z)):
            continue

        def role_at(e, ci):
            (eci, erole), (cci, crole) = ends[e]
            if eci == ci:
                return erole
            return crole

        # the two bridges meeting at a crossing must ride different passages
        if role_at(p, x) == role_at(q, x):
            continue
        if role_at(p, y) == role_at(r, y):
            continue
        if role_at(q, z) == role_at(r, z):
            continue

        def first_bit(e, first_c):
            return 0 if ends[e][0][0] == first_c else 1  # 0 when emitted by first_c

        firsts = (first_bit(p, x), first_bit(q, x), first_bit(r, z))
        overs = (
            1 if role_at(p, x) == "over" else 0,
            1 if role_at(p, y) == "over" else 0,
            1 if role_at(q, z) == "over" else 0,
        )
        signs = tuple(d.crossings[ci].sign for ci in (x, y, z))
        if firsts + overs + signs not in _R3_VARIANTS:
            continue

        def strand(e, c_first, c_second):
            # traversal order given by the bridge direction
            if ends[e][0][0] == c_first:
                return (c_first, c_second, role_at(e, c_first), role_at(e, c_second))
            return (c_second, c_first, role_at(e, c_second), role_at(e, c_first))

        return _R3Site(
            crossings=(x, y, z),
            bridges=(p, q, r),
            strands=(strand(p, x, y), strand(q, x, z), strand(r, z, y)),
        )
    return None


def find_r3_sites(d: VirtualDiagram) -> list[tuple[int, int, int]]:
    """Bridge-edge triples of realizable triangle slides, sorted."""
    consumed, emitted = slot_maps(d)
    links: dict[frozenset, list[int]] = {}
    for e in range(d.edges):
        a, b = emitted[e][0], consumed[e][0]
        if a == b:
            continue
        if isinstance(d.crossings[a], ClassicalCrossing) and isinstance(
            d.crossings[b], ClassicalCrossing
        ):
            links.setdefault(frozenset((a, b)), []).append(e)
    sites = set()
    pairs = sorted(links, key=sorted)
    for pair in pairs:
        a, b = sorted(pair)
        for third in range(len(d.crossings)):
            if third in pair:
                continue
            e1s = links.get(frozenset((a, third)))
            e2s = links.get(frozenset((b, third)))
            if not e1s or not e2s:
                continue
            for e0 in links[pair]:
                for e1 in e1s:
                    for e2 in e2s:
                        bridges = tuple(sorted((e0, e1, e2)))
                        if bridges in sites:
                            continue
                        if _resolve_r3_site(d, bridges) is not None:
                            sites.add(bridges)
    return sorted(sites)


def r3_slide(d: VirtualDiagram, bridges) -> VirtualDiagram:
    """Flip the triangle identified by its three bridge edges."""
    site = _resolve_r3_site(d, tuple(bridges))
    if site is None:
        raise NotApplicable(f"edges {tuple(bridges)} do not form a realizable triangle")
    new_slots: dict[tuple[int, str], tuple[int, int]] = {}
    for bridge, (c_first, c_second, role_first, role_second) in zip(site.bridges, site.strands):
        cross_first = d.crossings[c_first]
        cross_second = d.crossings[c_second]
        e_in = _passage_edges(cross_first, role_first)[0]
        e_out = _passage_edges(cross_second, role_second)[1]
        # the strand now meets its second crossing first
        new_slots[(c_second, role_second)] = (e_in, bridge)
        new_slots[(c_first, role_first)] = (bridge, e_out)
    crossings = list(d.crossings)
    for ci in site.crossings:
        c = d.crossings[ci]
        under = new_slots[(ci, "under")]
        over = new_slots[(ci, "over")]
        crossings[ci] = ClassicalCrossing(c.sign, under[0], over[0], under[1], over[1])
    return relabel_canonical(crossings, d.free_loops)


# ---------------------------------------------------------------------------
# virtual kinks


def vkink_insert(d: VirtualDiagram, edge, chirality: int) -> VirtualDiagram:
    """Insert a virtual kink on an edge, or onto a free loop (edge=None)."""
    if chirality not in (1, -1):
        raise InvalidParameter("chirality must be +1 or -1")
    a, b = d.edges, d.edges + 1
    if edge is None:
        if d.free_loops < 1:
            raise NotApplicable("no free loop to kink")
        kink = VirtualCrossing(a, b, b, a, chirality)
        return relabel_canonical(list(d.crossings) + [kink], d.free_loops - 1)
    if not 0 <= edge < d.edges:
        raise InvalidParameter(f"edge {edge} out of range")
    crossings = list(d.crossings)
    _rewire_consumer(crossings, edge, b)
    crossings.append(VirtualCrossing(edge, a, a, b, chirality))
    return relabel_canonical(crossings, d.free_loops)


def find_vkink_sites(d: VirtualDiagram) -> list[int]:
    sites = []
    for c in d.crossings:
        if isinstance(c, VirtualCrossing):
            if c.first_out == c.second_in:
                sites.append(c.first_out)
            elif c.second_out == c.first_in:
                sites.append(c.second_out)
    return sorted(set(sites))


def vkink_remove(d: VirtualDiagram, loop_edge: int) -> VirtualDiagram:
    for ci, c in enumerate(d.crossings):
        if isinstance(c, VirtualCrossing) and (
            c.first_out == loop_edge == c.second_in or c.second_out == loop_edge == c.first_in
        ):
            survivors, gained, _ = _remove_crossings(d, {ci})
            return relabel_canonical(survivors, d.free_loops + gained)
    raise NotApplicable(f"edge {loop_edge} is not the loop of a virtual kink")


# ---------------------------------------------------------------------------
# detour


def _route_chirality(c: VirtualCrossing, route_role: str) -> int:
    """Chirality as seen with the route strand in first position."""
    return c.chirality if route_role == "first" else -c.chirality


def detour(d: VirtualDiagram, start: int, end: int, new_passages) -> VirtualDiagram:
    """Re-route the strand segment from ``start`` to ``end``.

    The segment's interior crossing passages must all be virtual; they
    are deleted (merging the transversal strands) and the segment is
    re-routed to cross each listed (edge, chirality) target virtually,
    in order.  Chirality is given with the re-routed strand in first
    position.  When the route crosses one target edge several times the
    crossings sit along the target in route order.  Endpoints (the slots
    emitting ``start`` and consuming ``end``) are untouched.
    """
    for e in (start, end):
        if not 0 <= e < d.edges:
            raise InvalidParameter(f"edge {e} out of range")
    consumed, emitted = slot_maps(d)
    interior: list[int] = []
    e = start
    while e != end:
        ci, role = consumed[e]
        c = d.crossings[ci]
        if not isinstance(c, VirtualCrossing):
            raise NotApplicable("segment interior contains a classical passage")
        interior.append(ci)
        e = _passage_edges(c, role)[1]
        if e == start:
            raise NotApplicable("segment never reaches its end edge")
    interior_set = set(interior)
    if emitted[start][0] in interior_set or consumed[end][0] in interior_set:
        raise NotApplicable("segment endpoints lie on interior crossings")

    survivors, gained, find = _remove_crossings(d, interior_set)
    route = find(start)

    passages = []
    for t, ch in new_passages:
        if not isinstance(t, int) or not 0 <= t < d.edges:
            raise InvalidParameter(f"target edge {t!r} out of range")
        if ch not in (1, -1):
            raise InvalidParameter("chirality must be +1 or -1")
        rep = find(t)
        if rep == route:
            raise InvalidParameter("a detour cannot cross its own route")
        passages.append((rep, ch))

    fresh = d.edges
    pieces = [route]
    for _ in passages:
        pieces.append(fresh)
        fresh += 1
    if passages:
        # the slot that consumed the segment now consumes the last route piece
        _rewire_consumer(survivors, route, pieces[-1])
    tail: dict[int, int] = {}  # target rep -> piece carrying its current far end
    for i, (t, ch) in enumerate(passages):
        t_cur = tail.get(t, t)
        t_next = fresh
        fresh += 1
        _rewire_consumer(survivors, t_cur, t_next)
        survivors.append(VirtualCrossing(pieces[i], pieces[i + 1], t_cur, t_next, ch))
        tail[t] = t_next
    return relabel_canonical(survivors, d.free_loops + gained)


def segment_passages(d: VirtualDiagram, start: int, end: int) -> list[tuple[int, int]]:
    """The (transversal in-edge, route-view chirality) list along a segment."""
    consumed, _ = slot_maps(d)
    out = []
    e = start
    while e != end:
        ci, role = consumed[e]
        c = d.crossings[ci]
        if not isinstance(c, VirtualCrossing):
            raise NotApplicable("segment interior contains a classical passage")
        other = "second" if role == "first" else "first"
        out.append((_passage_edges(c, other)[0], _route_chirality(c, role)))
        e = _passage_edges(c, role)[1]
        if e == start:
            raise NotApplicable("segment never reaches its end edge")
    return out


# ---------------------------------------------------------------------------
# fuzz-safe detour instance families


def find_poke_remove_sites(d: VirtualDiagram) -> list[tuple[int, int]]:
    """(start, end) segments whose two virtual passages form a cancelling bigon."""
    consumed, emitted = slot_maps(d)
    sites = []
    for v1, c1 in enumerate(d.crossings):
        if not isinstance(c1, VirtualCrossing):
            continue
        for role1 in ("first", "second"):
            r_in, r_mid = _passage_edges(c1, role1)
            v2, role2 = consumed[r_mid]
            c2 = d.crossings[v2]
            if v2 == v1 or not isinstance(c2, VirtualCrossing):
                continue
            r_end = _passage_edges(c2, role2)[1]
            if _route_chirality(c1, role1) + _route_chirality(c2, role2) != 0:
                continue
            o1 = "second" if role1 == "first" else "first"
            o2 = "second" if role2 == "first" else "first"
            t1_in, t1_out = _passage_edges(c1, o1)
            t2_in, t2_out = _passage_edges(c2, o2)
            if t1_out != t2_in and t2_out != t1_in:
                continue
            if emitted[r_in][0] in (v1, v2) or consumed[r_end][0] in (v1, v2):
                continue
            sites.append((r_in, r_end))
    return sorted(set(sites))


def find_virtual_slide_sites(d: VirtualDiagram) -> list[tuple[int, int, tuple[tuple[int, int], ...]]]:
    """Single virtual passages that can hop across an adjacent virtual crossing."""
    consumed, emitted = slot_maps(d)
    sites = []
    for v, c in enumerate(d.crossings):
        if not isinstance(c, VirtualCrossing):
            continue
        for role in ("first", "second"):
            r_in, r_out = _passage_edges(c, role)
            if emitted[r_in][0] == v or consumed[r_out][0] == v:
                continue  # the route kinks through this crossing; not a slide site
            other = "second" if role == "first" else "first"
            t_in, t_out = _passage_edges(c, other)
            ch = _route_chirality(c, role)
            wi, wrole = consumed[t_out]
            if wi != v and isinstance(d.crossings[wi], VirtualCrossing):
                u = _passage_edges(d.crossings[wi], wrole)[1]
                if u not in (r_in, r_out):
                    sites.append((r_in, r_out, ((u, ch),)))
            wi, wrole = emitted[t_in]
            if wi != v and isinstance(d.crossings[wi], VirtualCrossing):
                u = _passage_edges(d.crossings[wi], wrole)[0]
                if u not in (r_in, r_out):
                    sites.append((r_in, r_out, ((u, ch),)))
    return sorted(set(sites))


def find_semi_virtual_slide_sites(
    d: VirtualDiagram,
) -> list[tuple[int, int, tuple[tuple[int, int], ...]]]:
    """Consecutive virtual passage pairs that can slide past a classical crossing.

    The route crosses both strands of one classical crossing on the same
    side; sliding moves both passages to the other side in swapped order.
    Only chirality pairs with p*q = side1*side2 are offered (the planar
    slide condition).
    """
    consumed, emitted = slot_maps(d)
    sites = []

    def adjacency(c, other_role):
        """(classical crossing, side, passage role there, other-half edge) or None."""
        t_in, t_out = _passage_edges(c, other_role)
        qi, qrole = consumed[t_out]
        if isinstance(d.crossings[qi], ClassicalCrossing):
            return qi, 1, qrole, _passage_edges(d.crossings[qi], qrole)[1]
        qi, qrole = emitted[t_in]
        if isinstance(d.crossings[qi], ClassicalCrossing):
            return qi, -1, qrole, _passage_edges(d.crossings[qi], qrole)[0]
        return None

    for v1, c1 in enumerate(d.crossings):
        if not isinstance(c1, VirtualCrossing):
            continue
        for role1 in ("first", "second"):
            r_in, r_mid = _passage_edges(c1, role1)
            v2, role2 = consumed[r_mid]
            c2 = d.crossings[v2]
            if v2 == v1 or not isinstance(c2, VirtualCrossing):
                continue
            r_end = _passage_edges(c2, role2)[1]
            if emitted[r_in][0] in (v1, v2) or consumed[r_end][0] in (v1, v2):
                continue
            o1 = "second" if role1 == "first" else "first"
            o2 = "second" if role2 == "first" else "first"
            adj1 = adjacency(c1, o1)
            adj2 = adjacency(c2, o2)
            if adj1 is None or adj2 is None:
                continue
            q1, s1, qrole1, other1 = adj1
            q2, s2, qrole2, other2 = adj2
            if q1 != q2 or qrole1 == qrole2:
                continue
            p = _route_chirality(c1, role1)
            qch = _route_chirality(c2, role2)
            if p * qch != s1 * s2:
                continue
            if {other1, other2} & {r_in, r_mid, r_end}:
                continue
            sites.append((r_in, r_end, ((other2, qch), (other1, p))))
    return sorted(set(sites))


# ---------------------------------------------------------------------------
# move records and the randomized fuzzer


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    site: dict

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "site": self.site}


CLASSICAL_KINDS = ("r1_insert", "r1_remove", "r2_insert", "r2_remove", "r3_slide")
VIRTUAL_KINDS = ("vkink_insert", "vkink_remove", "detour")
ALL_KINDS = CLASSICAL_KINDS + VIRTUAL_KINDS
_SHRINKING = {"r1_remove", "r2_remove", "vkink_remove"}


def apply_move(d: VirtualDiagram, record: MoveRecord) -> VirtualDiagram:
    kind, site = record.kind, record.site
    if kind == "r1_insert":
        edge = None if site["edge"] == LOOP else site["edge"]
        return r1_insert(d, edge, site["sign"], site["handed"])
    if kind == "r1_remove":
        return r1_remove(d, site["loop"])
    if kind == "r2_insert":
        return r2_insert(d, site["edge_a"], site["edge_b"], site["over_first"])
    if kind == "r2_remove":
        return r2_remove(d, site["over_mid"])
    if kind == "r3_slide":
        return r3_slide(d, tuple(site["bridges"]))
    if kind == "vkink_insert":
        edge = None if site["edge"] == LOOP else site["edge"]
        return vkink_insert(d, edge, site["chirality"])
    if kind == "vkink_remove":
        return vkink_remove(d, site["loop"])
    if kind == "detour":
        return detour(d, site["start"], site["end"], [tuple(p) for p in site["passages"]])
    raise InvalidParameter(f"unknown move kind {kind!r}")


def _instantiate(d, rng, kind, allow_semi_virtual, prefer_removal):
    if kind == "r1_insert" or kind == "vkink_insert":
        choices = list(range(d.edges)) + ([LOOP] if d.free_loops else [])
        if not choices:
            return None
        edge = rng.choice(choices)
        if kind == "r1_insert":
            site = {"edge": edge, "sign": rng.choice((1, -1)), "handed": rng.choice(("under", "over"))}
        else:
            site = {"edge": edge, "chirality": rng.choice((1, -1))}
        return MoveRecord(kind, site)
    if kind == "r1_remove":
        sites = find_r1_sites(d)
        return MoveRecord(kind, {"loop": rng.choice(sites)}) if sites else None
    if kind == "r2_insert":
        if d.edges < 2:
            return None
        a, b = rng.sample(range(d.edges), 2)
        return MoveRecord(kind, {"edge_a": a, "edge_b": b, "over_first": rng.random() < 0.5})
    if kind == "r2_remove":
        sites = find_r2_sites(d)
        return MoveRecord(kind, {"over_mid": rng.choice(sites)}) if sites else None
    if kind == "r3_slide":
        sites = find_r3_sites(d)
        return MoveRecord(kind, {"bridges": list(rng.choice(sites))}) if sites else None
    if kind == "vkink_remove":
        sites = find_vkink_sites(d)
        return MoveRecord(kind, {"loop": rng.choice(sites)}) if sites else None
    if kind == "detour":
        families = []
        if d.edges >= 2:
            families.append("poke_insert")
        remove_sites = find_poke_remove_sites(d)
        if remove_sites:
            families.append("poke_remove")
        slide_sites = find_virtual_slide_sites(d)
        if slide_sites:
            families.append("virtual_slide")
        semi_sites = find_semi_virtual_slide_sites(d) if allow_semi_virtual else []
        if semi_sites:
            families.append("semi_virtual_slide")
        if not families:
            return None
        if prefer_removal and "poke_remove" in families:
            family = "poke_remove"
        else:
            family = rng.choice(families)
        if family == "poke_insert":
            e, t = rng.sample(range(d.edges), 2)
            ch = rng.choice((1, -1))
            site = {"start": e, "end": e, "passages": [[t, ch], [t, -ch]]}
        elif family == "poke_remove":
            start, end = rng.choice(remove_sites)
            site = {"start": start, "end": end, "passages": []}
        elif family == "virtual_slide":
            start, end, passages = rng.choice(slide_sites)
            site = {"start": start, "end": end, "passages": [list(p) for p in passages]}
        else:
            start, end, passages = rng.choice(semi_sites)
            site = {"start": start, "end": end, "passages": [list(p) for p in passages]}
        return MoveRecord("detour", site)
    raise InvalidParameter(f"unknown move kind {kind!r}")


def random_equivalent(
    d: VirtualDiagram,
    seed: int,
    n_moves: int,
    allow_semi_virtual: bool = True,
    kinds=None,
    soft_cap: int | None = None,
) -> tuple[VirtualDiagram, list[MoveRecord]]:
    """Apply randomly chosen applicable moves; deterministic for a fixed seed.

    ``kinds`` restricts the move menu (e.g. to CLASSICAL_KINDS); the
    ``soft_cap`` steers move choice toward removals once the diagram
    outgrows it, keeping fuzz traces affordable.
    """
    rng = random.Random(seed)
    menu = ALL_KINDS if kinds is None else tuple(kinds)
    cap = soft_cap if soft_cap is not None else max(24, 2 * d.edges + 16)
    cur = d
    trace: list[MoveRecord] = []
    for _ in range(n_moves):
        order = list(menu)
        rng.shuffle(order)
        if cur.edges > cap:
            order.sort(key=lambda k: (k not in _SHRINKING and k != "detour"))
        record = None
        for kind in order:
            record = _instantiate(cur, rng, kind, allow_semi_virtual, cur.edges > cap)
            if record is not None:
                break
        if record is None:
            break
        cur = apply_move(cur, record)
        trace.append(record)
    return cur, trace
