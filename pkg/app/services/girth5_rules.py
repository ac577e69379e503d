"""
Reduction rules for plane graphs of girth at least 5.
"""
from itertools import combinations
from typing import Iterator, Tuple

from app.enums import GraphClass
from app.services.reduction_rules import (
    RuleContext,
    RuleSpec,
    Surgery,
    Variant,
    cubic_beside_heavy,
    cubic_between_lights,
    cubic_face_apexes,
    distinct,
    heavy_vertex,
    light_beside_heavy,
    light_bypass,
    light_path_end,
    surgery,
    triple,
)

CLASS = GraphClass.GIRTH5


def _t(alpha: int, beta: int, gamma: int):
    return triple(CLASS, alpha, beta, gamma)


def separating_cubic_pentagon(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(5):
        if ctx.separates(c, u[0], u[1]):
            yield surgery(c, c, {c[0], c[1], c[3]})


# --- 2-vertices on 5-cycles ------------------------------------------------

def _light_pentagons(ctx: RuleContext):
    """5-cycles (u, v, w, x, y) through a 2-vertex v between two 3-vertices."""
    for c in ctx.cycles(5):
        u, v, w, x, y = c
        if ctx.deg(v) == 2 and ctx.deg(u) == 3 and ctx.deg(w) == 3:
            yield c


def _full_pentagons(ctx: RuleContext):
    """As above with x and y 3-vertices; adds the spokes u', w', x', y'."""
    for c in _light_pentagons(ctx):
        u, v, w, x, y = c
        if ctx.deg(x) != 3 or ctx.deg(y) != 3:
            continue
        u1, w1, x1, y1 = ctx.last(u, v, y), ctx.last(w, v, x), ctx.last(x, w, y), ctx.last(y, u, x)
        if distinct(*c, u1, w1, x1, y1):
            yield c, u1, w1, x1, y1


def pentagon_mixed(ctx: RuleContext) -> Iterator[Surgery]:
    for c in _light_pentagons(ctx):
        u, v, w, x, y = c
        if ctx.deg(x) == 3 and ctx.deg(y) == 4:
            yield surgery(c, c, {u, v, x})


def pentagon_light_spoke(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        if ctx.deg(x1) == 2:
            yield surgery(c + (x1,), set(c) | {x1}, {u, v, x, x1})


def pentagon_heavy_spoke(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        if ctx.deg(u1) == 4 or ctx.deg(y1) == 4:
            yield surgery(c + (u1, y1), set(c) | {u1, y1}, {u, v, w, y})


def pentagon_linked_spokes(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        if ctx.adjacent(u1, x1):
            yield surgery(c + (u1, x1), set(c) | {u1, x1}, {u, v, x, y, x1})


def pentagon_bridge_u(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        yield surgery(c + (u1,), {u, v, w}, {u, v}, added=[(u1, y)])


def pentagon_bridge_x(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        yield surgery(c + (x1,), {v, w, x}, {x, v}, added=[(x1, y)])


def pentagon_light_corner(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        for z in ctx.common(u1, y1, u):
            if ctx.deg(z) != 2:
                continue
            for z1 in ctx.common(x1, y1, x):
                if distinct(*c, u1, x1, y1, z, z1):
                    yield surgery(
                        c + (u1, x1, y1, z, z1), set(c) | {u1, x1, y1, z, z1}, {u, v, x, u1, x1, y1, z}
                    )


def pentagon_corner(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u1, w1, x1, y1 in _full_pentagons(ctx):
        u, v, w, x, y = c
        for z in ctx.common(u1, y1, u):
            if distinct(*c, u1, y1, z):
                yield surgery(c + (u1, y1, z), set(c) | {u1, y1, z}, {u, v, x, u1, y1})


def pentagon_twin_heavy(ctx: RuleContext) -> Iterator[Surgery]:
    cycles = list(_light_pentagons(ctx))
    for c in cycles:
        u, v, w, x, y = c
        if ctx.deg(x) != 4 or ctx.deg(y) != 4:
            continue
        for other in cycles:
            if other[:3] == c[:3] and not {other[3], other[4]} & {x, y}:
                yield surgery(c + (other[3],), set(c) | {other[3]}, {u, v, w})


# --- 5-cycles with one 4-vertex --------------------------------------------

def _one_heavy(ctx: RuleContext, faces_only: bool):
    """5-cycle v0..v4 with v0 the only 4-vertex; spokes u1..u4."""
    for c in ctx.face_cycles(5) if faces_only else ctx.cycles(5):
        if ctx.deg(c[0]) == 4 and all(ctx.deg(v) == 3 for v in c[1:]):
            u = ctx.spokes(c)
            if distinct(*c, *u[1:]):
                yield c, u


def heavy_spoke(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _one_heavy(ctx, faces_only=False):
        for i in (1, 2):
            if ctx.deg(u[i]) == 4:
                yield surgery(c + (u[i],), set(c) | {u[i]}, {c[1], c[2], c[4]})


def separating_one_heavy(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _one_heavy(ctx, faces_only=False):
        if ctx.separates(c, u[1], u[2]):
            yield surgery(c, c, {c[1], c[2], c[4]})


def separating_one_heavy_wide(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _one_heavy(ctx, faces_only=False):
        if not ctx.is_separating(c):
            continue
        _, v1, v2, v3, v4 = c
        for w in ctx.common(u[1], u[2], v1, v2):
            w1 = ctx.last(u[1], v1, w)
            if distinct(*c, *u[1:], w, w1):
                yield surgery(c + (u[1], u[2], u[3], w, w1), set(c) | {u[1], u[2], u[3], w, w1},
                              {v1, v2, v3, v4, u[1], u[2]})


def separating_one_heavy_corner(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _one_heavy(ctx, faces_only=False):
        if not ctx.is_separating(c):
            continue
        _, v1, v2, v3, v4 = c
        for w in ctx.common(u[1], u[2], v1, v2):
            if distinct(*c, *u[1:], w):
                yield surgery(c + (u[1], u[2], w), {v1, v2, v3, v4, u[1], u[2], w}, {u[1], u[2], v2, v4})


# --- 5-cycles and 5-faces of 3-vertices -------------------------------------

def linked_far_spokes(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(5):
        if ctx.adjacent(u[0], u[2]):
            yield surgery(c + (u[0], u[2]), set(c) | {u[0], u[2]}, c[:4])


def _one_heavy_face_frames(ctx: RuleContext):
    """5-face with one 4-vertex, w joining u1 and u2, w' joining u3 and u4."""
    for c, u in _one_heavy(ctx, faces_only=True):
        _, v1, v2, v3, v4 = c
        for w in ctx.common(u[1], u[2], v1, v2):
            for w1 in ctx.common(u[3], u[4], v3, v4):
                if distinct(*c, *u[1:], w, w1):
                    yield c, u, w, w1


def face_heavy_spoke(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _one_heavy(ctx, faces_only=True):
        for i in (1, 2):
            if ctx.deg(u[i]) == 4:
                yield surgery(c + (u[i],), set(c) | {u[i]}, {c[1], c[2], c[4]})


def face_corner_closed(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _one_heavy(ctx, faces_only=True):
        v0, v1, v2, _, v4 = c
        for w in ctx.common(u[1], u[2], v1, v2):
            if distinct(*c, *u[1:], w) and ctx.adjacent(w, u[4]):
                yield surgery(c + (u[1], u[4], w), {v0, v1, v2, v4, u[1], u[4], w}, {w, u[1], v1, v4})


def face_corners_linked(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u, w, w1 in _one_heavy_face_frames(ctx):
        v0, v1, _, _, v4 = c
        if ctx.adjacent(w, w1):
            yield surgery(c + (u[1], u[4], w, w1), {v0, v1, v4, u[1], u[4], w, w1}, {u[1], v1, v4, w1})


def face_corner_reach(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u, w, w1 in _one_heavy_face_frames(ctx):
        _, v1, v2, v3, v4 = c
        x = ctx.last(u[1], v1, w)
        if x is None or not distinct(*c, *u[1:], w, w1, x):
            continue
        region = {v1, v2, v3, v4, *u[1:], w, w1, x}
        yield surgery(c + (w, w1, x), region, {v1, v2, v3, u[1], u[4], w, w1})
        yield surgery(c + (w, w1, x, u[3]), region, {v1, v2, v3, u[1], u[4], w, u[3]})


def face_corner_wide(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u, w, w1 in _one_heavy_face_frames(ctx):
        _, v1, v2, v3, v4 = c
        x = ctx.last(u[1], v1, w)
        if x is not None and distinct(*c, *u[1:], w, w1, x):
            yield surgery(c + (w, w1, x), set(c) | set(u[1:]) | {w, w1, x}, {v1, v2, v3, v4, u[1], w, w1})


def _cubic_faces(ctx: RuleContext):
    return ctx.cubic_cycles(5, faces_only=True)


def three_heavy_spokes(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _cubic_faces(ctx):
        heavy = [i for i in range(5) if ctx.deg(u[i]) == 4]
        for trio in combinations(heavy, 3):
            for extra in range(5):
                if extra not in trio:
                    yield surgery(c + tuple(u[i] for i in trio) + (c[extra],),
                                  set(c) | {u[i] for i in trio}, {c[i] for i in trio} | {c[extra]})


def face_linked_spokes(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _cubic_faces(ctx):
        if ctx.adjacent(u[0], u[2]):
            yield surgery(c + (u[0], u[2]), set(c[:4]) | {u[0], u[2]}, c[:3])


def twin_pentagons(ctx: RuleContext) -> Iterator[Surgery]:
    """Two 5-cycles of 3-vertices on a common edge, with far corners sharing a neighbour."""
    cycles = [c for c, _ in ctx.cubic_cycles(5)]
    by_edge = {}
    for c in cycles:
        by_edge.setdefault(c[:2], []).append(c)
    for c in cycles:
        v0, v1, v2, v3, v4 = c
        for other in by_edge.get((v0, v1), []):
            _, _, u2, u3, u4 = other
            if set(other) & set(c) != {v0, v1}:
                continue
            for w in ctx.common(v3, u3, v2, v4, u2, u4):
                yield surgery(c + other[2:] + (w,), set(c) | set(other) | {w}, {v0, v1, v2, v3, u3, u4})


def face_spokes_far_corner(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _cubic_faces(ctx):
        v0, v1, v2, v3, v4 = c
        for j in (2, 3):
            for w in ctx.common(u[j], u[j + 1], c[j], c[j + 1]):
                if w not in u:
                    yield surgery(c + u + (w,), set(c) | set(u) | {w},
                                  {v0, v1, v2, v4, u[j], u[j + 1]})


def face_spokes_three_corners(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _cubic_faces(ctx):
        v0, v1, v2, v3, v4 = c
        for w in ctx.common(u[0], u[1], v0, v1):
            for w1 in ctx.common(u[1], u[2], v1, v2):
                for w2 in ctx.common(u[2], u[3], v2, v3):
                    if distinct(*c, *u, w, w1, w2):
                        yield surgery(c + u[:4] + (w, w1, w2), set(c) | set(u[:4]) | {w, w1, w2},
                                      {v0, v2, v4, u[1], u[2], u[3], w1})


def _corner_pairs(ctx: RuleContext):
    for c, u in _cubic_faces(ctx):
        for w1 in ctx.common(u[1], u[2], c[1], c[2]):
            for w3 in ctx.common(u[3], u[4], c[3], c[4]):
                if distinct(*c, *u, w1, w3):
                    yield c, u, w1, w3


def face_spokes_two_corners(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u, w1, w3 in _corner_pairs(ctx):
        v0, v1, v2, v3, _ = c
        yield surgery(c + u + (w1, w3), set(c) | set(u) | {w1, w3}, {v0, v1, v2, v3, u[3], u[4], w1})


def face_spokes_open(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u, w1, w3 in _corner_pairs(ctx):
        _, v1, v2, v3, v4 = c
        yield surgery(c + u + (w1, w3), set(c) | set(u[1:]) | {w1, w3}, {v1, v2, v3, v4, u[3], u[4], w1})


def face_spokes_all_corners(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _cubic_faces(ctx):
        v0, v1, v2, v3, _ = c
        for w1 in ctx.common(u[1], u[2], c[1], c[2]):
            for w2 in ctx.common(u[2], u[3], c[2], c[3]):
                for w3 in ctx.common(u[3], u[4], c[3], c[4]):
                    if distinct(*c, *u, w1, w2, w3):
                        yield surgery(c + u + (w1, w2, w3), set(c) | set(u) | {w1, w2, w3},
                                      {v0, v1, v2, v3, *u[1:]})


RULES: Tuple[RuleSpec, ...] = (
    RuleSpec("B1", CLASS, "2-edge-connected", note="bridges and components are split by the engine"),
    RuleSpec("B2", CLASS, "no 5+-vertex", (
        Variant("heavy_vertex", _t(1, 5, 0), heavy_vertex(5)),
    )),
    RuleSpec("B3", CLASS, "3-vertex beside a 4-vertex lies on a 5-cycle through its other neighbours", (
        Variant("join_other_neighbours", _t(2, 5, 1), cubic_beside_heavy(4)),
    )),
    RuleSpec("B4", CLASS, "no 2-vertex beside a 4-vertex", (
        Variant("drop_pair", _t(2, 5, 1), light_beside_heavy(4)),
    )),
    RuleSpec("B5", CLASS, "no 3-vertex beside two 2-vertices", (
        Variant("drop_triple", _t(3, 5, 2), cubic_between_lights),
    )),
    RuleSpec("B6", CLASS, "no separating 5-cycle of 3-vertices", (
        Variant("split_spokes", _t(5, 10, 3), separating_cubic_pentagon, needs_embedding=True),
    )),
    RuleSpec("B7", CLASS, "minimum degree 3", (
        Variant("path_end", _t(3, 5, 2), light_path_end),
        Variant("bypass", _t(1, 0, 1), light_bypass),
        Variant("mixed_pentagon", _t(5, 10, 3), pentagon_mixed),
        Variant("light_spoke", _t(6, 10, 4), pentagon_light_spoke),
        Variant("heavy_spoke", _t(7, 14, 4), pentagon_heavy_spoke),
        Variant("linked_spokes", _t(7, 10, 5), pentagon_linked_spokes),
        Variant("bridge_u", _t(3, 5, 2), pentagon_bridge_u),
        Variant("bridge_x", _t(3, 5, 2), pentagon_bridge_x),
        Variant("light_corner", _t(10, 15, 7), pentagon_light_corner),
        Variant("corner", _t(8, 14, 5), pentagon_corner),
        Variant("twin_heavy", _t(6, 14, 3), pentagon_twin_heavy),
    ), note="a 2-regular component is a cycle leaf of the engine"),
    RuleSpec("B8", CLASS, "spokes next to the 4-vertex of a 5-cycle are 3-vertices", (
        Variant("heavy_spoke", _t(6, 14, 3), heavy_spoke, needs_embedding=True),
    )),
    RuleSpec("B9", CLASS, "no separating 5-cycle with at most one 4-vertex", (
        Variant("split_spokes", _t(5, 10, 3), separating_one_heavy, needs_embedding=True),
        Variant("wide", _t(10, 20, 6), separating_one_heavy_wide, needs_embedding=True),
        Variant("corner", _t(7, 14, 4), separating_one_heavy_corner, needs_embedding=True),
    )),
    RuleSpec("B10", CLASS, "5-cycle of 3-vertices has a corner vertex between spokes", (
        Variant("linked_far_spokes", _t(7, 14, 4), linked_far_spokes, needs_embedding=True),
        Variant("apexes", _t(3, 5, 2), cubic_face_apexes, needs_embedding=True),
    )),
    RuleSpec("B11", CLASS, "no 5-face with exactly one 4-vertex", (
        Variant("heavy_spoke", _t(6, 14, 3), face_heavy_spoke, needs_embedding=True),
        Variant("corner_closed", _t(7, 14, 4), face_corner_closed, needs_embedding=True),
        Variant("corners_linked", _t(7, 14, 4), face_corners_linked, needs_embedding=True),
        Variant("corner_reach", _t(11, 19, 7), face_corner_reach, needs_embedding=True),
        Variant("corner_wide", _t(12, 23, 7), face_corner_wide, needs_embedding=True),
    )),
    RuleSpec("B12", CLASS, "no 5-face of 3-vertices with three 4-vertex spokes", (
        Variant("linked_spokes", _t(6, 14, 3), face_linked_spokes, needs_embedding=True),
        Variant("three_heavy", _t(8, 19, 4), three_heavy_spokes, needs_embedding=True),
    )),
    RuleSpec("B13", CLASS, "far corners of adjacent 5-cycles share no neighbour", (
        Variant("twin_pentagons", _t(9, 15, 6), twin_pentagons, needs_embedding=True),
    )),
    RuleSpec("B14", CLASS, "no 5-face with only 3-vertices", (
        Variant("linked_far_spokes", _t(7, 14, 4), linked_far_spokes, needs_embedding=True),
        Variant("far_corner", _t(11, 23, 6), face_spokes_far_corner, needs_embedding=True),
        Variant("three_corners", _t(12, 23, 7), face_spokes_three_corners, needs_embedding=True),
        Variant("two_corners", _t(12, 23, 7), face_spokes_two_corners, needs_embedding=True),
        Variant("two_corners_open", _t(11, 19, 7), face_spokes_open, needs_embedding=True),
        Variant("all_corners", _t(13, 23, 8), face_spokes_all_corners, needs_embedding=True),
    )),
)
