"""
Reduction rules for triangle-free plane graphs.

Rules are listed in the order the engine tries them; variants follow the
cases of the argument that rules the configuration out of a minimal
counter-example. Matchers only name vertices; SurgeryCheck decides.
"""
from typing import Iterator, Optional, Tuple

from app.enums import GraphClass
from app.services.reduction_rules import (
    Apex,
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

CLASS = GraphClass.GIRTH4


def _t(alpha: int, beta: int, gamma: int):
    return triple(CLASS, alpha, beta, gamma)


# --- 2-vertices --------------------------------------------------------

def _light_twins(ctx: RuleContext) -> Iterator[Tuple[int, int, int]]:
    """2-vertex v between two 3-vertices, in both orders."""
    for v in ctx.vertices(degree=2):
        u, w = ctx.nbrs(v)
        if ctx.deg(u) == 3 and ctx.deg(w) == 3:
            yield v, u, w
            yield v, w, u


def twins_with_one_more_common(ctx: RuleContext) -> Iterator[Surgery]:
    for v, u, w in _light_twins(ctx):
        for x in ctx.common(u, w, v):
            for y in ctx.others(u, v, x):
                yield surgery((v, u, w, x, y), {u, v, w, x, y}, {u, v, w})


def twins_with_two_more_common(ctx: RuleContext) -> Iterator[Surgery]:
    for v, u, w in _light_twins(ctx):
        common = ctx.common(u, w, v)
        if len(common) != 2:
            continue
        for x, y in (common, common[::-1]):
            for z in ctx.others(x, u, w):
                yield surgery((v, u, w, x, y, z), {u, v, w, x, y, z}, {u, v, x, y})


# --- 4-cycles ----------------------------------------------------------

def opposite_cubics(ctx: RuleContext) -> Iterator[Surgery]:
    for c in ctx.cycles(4):
        v0, v1, v2, v3 = c
        if ctx.deg(v0) == 3 and ctx.deg(v2) == 3 and ctx.deg(v1) >= 4 and ctx.deg(v3) >= 4:
            yield surgery(c, c, {v0, v2})


def _three_cubics(ctx: RuleContext) -> Iterator[Tuple[Tuple[int, ...], Tuple[Optional[int], ...]]]:
    for c in ctx.cycles(4):
        if all(ctx.deg(v) == 3 for v in c[:3]) and ctx.deg(c[3]) >= 4:
            yield c, ctx.spokes(c)


def shared_spoke(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in _three_cubics(ctx):
        if u[0] is not None and u[0] == u[2]:
            yield surgery(c + (u[0],), set(c) | {u[0]}, c[:3])


def _linked_spokes(ctx: RuleContext):
    for c, u in _three_cubics(ctx):
        u0, u1, u2 = u[:3]
        if distinct(*c, u0, u1, u2) and ctx.adjacent(u0, u1) and ctx.adjacent(u1, u2):
            yield c, u0, u1, u2


def linked_spokes_sparse(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u2 in _linked_spokes(ctx):
        yield surgery(c + (u0, u1, u2), set(c) | {u0, u1, u2}, set(c[:3]) | {u0})


def linked_spokes(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u2 in _linked_spokes(ctx):
        yield surgery(c + (u0, u1, u2), set(c) | {u0, u2}, c[:3])


def straddling_heavy(ctx: RuleContext) -> Iterator[Surgery]:
    """3-vertex opposite a 4-vertex with one edge on each side of the cycle."""
    for c in ctx.cycles(4):
        v0, v1, v2, v3 = c
        if ctx.deg(v0) != 3 or ctx.deg(v2) != 4 or ctx.deg(v1) < 4:
            continue
        a, b = ctx.others(v2, v1, v3)
        if ctx.separates(c, a, b):
            yield surgery(c, c, {v0, v2})


# --- 4-faces and separating 4-cycles ------------------------------------

def square_apex(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(4, faces_only=True):
        yield surgery(c, c, {c[0], c[2]}, apexes=[Apex("x", u[:3])], lift={"x": {c[1]}})


def square_ring_wide(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(4, faces_only=True):
        for i in (1, 2, 3):
            yield surgery(c + u + (u[i],), set(c) | set(u), {u[0], u[i], c[1], c[2], c[3]})


def square_ring_open(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(4, faces_only=True):
        for i in (2, 3):
            yield surgery(c + u + (u[i],), (set(c) | set(u)) - {u[i]}, {u[0], c[1], c[2], c[3]})


def square_two_spokes(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(4, faces_only=True):
        yield surgery(c + (u[0], u[2]), set(c) | {u[0], u[2]}, c[:3])


def separating_cubic_square(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u in ctx.cubic_cycles(4):
        if ctx.separates(c, u[1], u[2]):
            yield surgery(c + (u[0],), set(c) | {u[0]}, c[:3])


def cubic_beside_five(ctx: RuleContext) -> Iterator[Surgery]:
    for v in ctx.vertices(degree=3):
        for u in ctx.nbrs(v):
            if ctx.deg(u) < 5:
                continue
            for w in ctx.others(v, u):
                if ctx.deg(w) >= 4:
                    yield surgery((v, u, w), {u, v, w}, {v})


def _cubic_pair_square(ctx: RuleContext, faces_only: bool):
    for c in ctx.face_cycles(4) if faces_only else ctx.cycles(4):
        v0, v1, v2, v3 = c
        if ctx.deg(v0) == 3 and ctx.deg(v1) == 3 and ctx.deg(v2) == 4 and ctx.deg(v3) == 4:
            u0, u1 = ctx.last(v0, v1, v3), ctx.last(v1, v0, v2)
            if distinct(*c, u0, u1):
                yield c, u0, u1


def separating_cubic_pair(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1 in _cubic_pair_square(ctx, faces_only=False):
        if ctx.is_separating(c):
            v0, v1, _, v3 = c
            yield surgery(c + (u0, u1), {v0, v1, v3, u1}, {v0, v1})


def cubic_pair_face(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1 in _cubic_pair_square(ctx, faces_only=True):
        v0, v1, v2, v3 = c
        yield surgery(c + (u0, u1), {u1, v0, v1, v3}, {v0, v1}, added=[(u0, v2)])


# --- 4-faces with exactly one 3-vertex -----------------------------------

def _lone_cubic_faces(ctx: RuleContext):
    for c in ctx.face_cycles(4):
        if ctx.deg(c[0]) == 3 and all(ctx.deg(v) >= 4 for v in c[1:]):
            u0 = ctx.last(c[0], c[1], c[3])
            if u0 is not None and u0 not in c:
                yield c, u0


def lone_cubic_diagonal(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0 in _lone_cubic_faces(ctx):
        v0, _, v2, _ = c
        if ctx.adjacent(u0, v2) and ctx.deg(v2) == 5:
            yield surgery(c + (u0,), {u0, v0, v2}, {v0})


def lone_cubic_crossing(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0 in _lone_cubic_faces(ctx):
        v0, v1, _, v3 = c
        for u1 in ctx.common(v1, u0, v0):
            if ctx.adjacent(u1, v3) and ctx.deg(u1) == 5:
                yield surgery(c + (u0, u1), {u1, v0, v3}, {v0})


def lone_cubic_crossing_wide(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0 in _lone_cubic_faces(ctx):
        v0, v1, _, v3 = c
        for u1 in ctx.common(v1, u0, v0):
            if ctx.adjacent(u1, v3):
                yield surgery(c + (u0, u1), set(c) | {u0, u1}, {v0, v1, v3})


def _frames(ctx: RuleContext):
    """Face v0v1v2v3 with lone 3-vertex v0, spoke u0, the squares v0v1u1u0 and
    v0v3u3u0, and the last neighbours w0 of u0, w1 of v1 and w3 of v3."""
    for c, u0 in _lone_cubic_faces(ctx):
        v0, v1, v2, v3 = c
        for u1 in ctx.common(v1, u0, v0):
            for u3 in ctx.common(v3, u0, v0):
                if not distinct(*c, u0, u1, u3):
                    continue
                w0 = ctx.last(u0, v0, u1, u3)
                w1 = ctx.last(v1, v0, v2, u1)
                w3 = ctx.last(v3, v0, v2, u3)
                yield c, u0, u1, u3, w0, w1, w3


def frame_one_outer(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u3, w0, w1, w3 in _frames(ctx):
        core = set(c) | {u0, u1, u3}
        for w in (w0, w3):
            if w is not None and w not in core:
                yield surgery(c + (u0, u1, u3, w), core | {w}, {c[0], c[1], c[3], u0})


def frame_apex(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u3, w0, w1, w3 in _frames(ctx):
        v0, v1, _, v3 = c
        if distinct(*c, u0, u1, u3, w0, w1, w3):
            yield surgery(
                c + (u0, u1, u3, w0, w1, w3), set(c) | {u0, u1, u3}, {v1, v3, u0},
                apexes=[Apex("x", (w0, w1, w3))], lift={"x": {v0}},
            )


def frame_two_outer(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u3, w0, w1, w3 in _frames(ctx):
        if distinct(*c, u0, u1, u3, w0, w1):
            yield surgery(c + (u0, u1, u3, w0, w1), set(c) | {u0, u1, u3, w0, w1}, {c[0], c[1], c[3], u0})


def frame_three_outer(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u3, w0, w1, w3 in _frames(ctx):
        if not distinct(*c, u0, u1, u3, w0, w1, w3):
            continue
        region = set(c) | {u0, u1, u3, w0, w1, w3}
        for w in (w0, w3):
            yield surgery(c + (u0, u1, u3, w0, w1, w3, w), region, {c[0], c[1], c[3], u0, w})


def frame_keep_far_corner(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u3, w0, w1, w3 in _frames(ctx):
        v0, v1, _, v3 = c
        if distinct(*c, u0, u1, u3, w0, w1, w3):
            yield surgery(
                c + (u0, u1, u3, w0, w1, w3), {v0, v1, v3, u0, u1, u3, w0, w1, w3}, {v0, v1, u0, w0, w3}
            )


def frame_cubic_w1(ctx: RuleContext) -> Iterator[Surgery]:
    for c, u0, u1, u3, w0, w1, w3 in _frames(ctx):
        v0, v1, v2, v3 = c
        if w1 is None or ctx.deg(w1) != 3:
            continue
        for y0 in ctx.others(w1, v1):
            y1 = ctx.last(w1, v1, y0)
            if not (ctx.adjacent(y0, v2) and y1 is not None and ctx.adjacent(y1, u1)):
                continue
            z = ctx.last(v2, v1, v3, y0)
            if distinct(*c, u0, u1, w1, y0, y1, z):
                yield surgery(
                    c + (u0, u1, w1, y0, y1, z), set(c) | {u0, u1, w1, y0, y1, z}, {v0, v1, v2, u1, w1}
                )


RULES: Tuple[RuleSpec, ...] = (
    RuleSpec("L1", CLASS, "2-edge-connected", note="bridges and components are split by the engine"),
    RuleSpec("L2", CLASS, "no 6+-vertex", (
        Variant("heavy_vertex", _t(1, 6, 0), heavy_vertex(6)),
    )),
    RuleSpec("L3", CLASS, "3-vertex beside a 4+-vertex has linked other neighbours", (
        Variant("join_other_neighbours", _t(2, 5, 1), cubic_beside_heavy(4)),
    )),
    RuleSpec("L4", CLASS, "no 2-vertex beside a 4+-vertex", (
        Variant("drop_pair", _t(2, 5, 1), light_beside_heavy(4)),
    )),
    RuleSpec("L5", CLASS, "no 3-vertex beside two 2-vertices", (
        Variant("drop_triple", _t(3, 5, 2), cubic_between_lights),
    )),
    RuleSpec("L6", CLASS, "minimum degree 3", (
        Variant("path_end", _t(3, 5, 2), light_path_end),
        Variant("bypass", _t(1, 1, 1), light_bypass),
        Variant("one_more_common", _t(5, 9, 3), twins_with_one_more_common),
        Variant("two_more_common", _t(6, 8, 4), twins_with_two_more_common),
    ), note="a 2-regular component is a cycle leaf of the engine"),
    RuleSpec("L7", CLASS, "no 4-cycle with exactly three 3-vertices", (
        Variant("opposite_cubics", _t(4, 10, 2), opposite_cubics),
        Variant("shared_spoke", _t(5, 9, 3), shared_spoke),
        Variant("linked_spokes_sparse", _t(7, 13, 4), linked_spokes_sparse),
        Variant("linked_spokes", _t(6, 14, 3), linked_spokes),
        Variant("straddling_heavy", _t(4, 10, 2), straddling_heavy, needs_embedding=True),
    )),
    RuleSpec("L8", CLASS, "no 4-face with four 3-vertices", (
        Variant("apex", _t(3, 5, 2), square_apex, needs_embedding=True),
        Variant("ring_wide", _t(8, 12, 5), square_ring_wide, needs_embedding=True),
        Variant("ring_open", _t(7, 13, 4), square_ring_open, needs_embedding=True),
        Variant("two_spokes", _t(6, 14, 3), square_two_spokes, needs_embedding=True),
    )),
    RuleSpec("L9", CLASS, "no separating 4-cycle with four 3-vertices", (
        Variant("split_spokes", _t(5, 9, 3), separating_cubic_square, needs_embedding=True),
    )),
    RuleSpec("L10", CLASS, "no 3-vertex beside a 5-vertex", (
        Variant("drop_triple", _t(3, 10, 1), cubic_beside_five),
    )),
    RuleSpec("L11", CLASS, "no separating 4-cycle with two 3-vertices", (
        Variant("cut_three", _t(4, 10, 2), separating_cubic_pair, needs_embedding=True),
    )),
    RuleSpec("L12", CLASS, "no 4-face with exactly two 3-vertices", (
        Variant("subdivided_edge", _t(4, 10, 2), cubic_pair_face, needs_embedding=True),
    )),
    RuleSpec("L13", CLASS, "no 4-face with exactly one 3-vertex", (
        Variant("diagonal_five", _t(3, 10, 1), lone_cubic_diagonal, needs_embedding=True),
        Variant("crossing_five", _t(3, 10, 1), lone_cubic_crossing, needs_embedding=True),
        Variant("crossing", _t(6, 14, 3), lone_cubic_crossing_wide, needs_embedding=True),
        Variant("one_outer", _t(8, 19, 4), frame_one_outer, needs_embedding=True),
        Variant("apex", _t(6, 14, 3), frame_apex, needs_embedding=True),
        Variant("two_outer", _t(9, 24, 4), frame_two_outer, needs_embedding=True),
        Variant("three_outer", _t(10, 23, 5), frame_three_outer, needs_embedding=True),
        Variant("keep_far_corner", _t(9, 19, 5), frame_keep_far_corner, needs_embedding=True),
        Variant("cubic_outer", _t(10, 23, 5), frame_cubic_w1, needs_embedding=True),
    )),
    RuleSpec("L14", CLASS, "no 5-face with only 3-vertices", (
        Variant("apexes", _t(3, 5, 2), cubic_face_apexes, needs_embedding=True),
    )),
    RuleSpec("L15", CLASS, "no 3-vertex adjacent to a 3-vertex and to a 4-vertex",
             note="dispatches to the L3 and L11 configurations; audit predicate deg3_deg3_deg4"),
)
