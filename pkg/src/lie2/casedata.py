"""Bundled reference tables for the toral-rank-3 case analysis.

These are byte-faithful copies of the published tables the verifier replays:
the sixteen rank-3 root systems closed over the three base roots, the claimed
admissible toral spans per case, and the dimension-pattern lists for ambient
dimensions 10 through 16.  The copies deliberately preserve known defects
(a malformed tuple, duplicated entries, absent classes, and a few spans that
disagree with the uniform admissibility rule); the cross-check and comparison
reports exist to surface exactly those, so nothing here is silently repaired.
"""

from __future__ import annotations

from typing import Dict, Tuple

Root = Tuple[int, int, int]

V100: Root = (1, 0, 0)
V010: Root = (0, 1, 0)
V001: Root = (0, 0, 1)
V110: Root = (1, 1, 0)
V101: Root = (1, 0, 1)
V011: Root = (0, 1, 1)
V111: Root = (1, 1, 1)

BASE_ROOTS = (V100, V010, V001)
EXTRA_ROOTS = (V110, V101, V011, V111)

# case 0 is the full system; cases 1..15 add subsets of the extra roots of
# sizes 0..3 to the base, ordered lexicographically by extra-root index.
PUBLISHED_ROOT_SYSTEMS: Tuple[Tuple[Root, ...], ...] = (
    BASE_ROOTS + EXTRA_ROOTS,
    BASE_ROOTS,
    BASE_ROOTS + (V110,),
    BASE_ROOTS + (V101,),
    BASE_ROOTS + (V011,),
    BASE_ROOTS + (V111,),
    BASE_ROOTS + (V110, V101),
    BASE_ROOTS + (V110, V011),
    BASE_ROOTS + (V110, V111),
    BASE_ROOTS + (V101, V011),
    BASE_ROOTS + (V101, V111),
    BASE_ROOTS + (V011, V111),
    BASE_ROOTS + (V110, V101, V011),
    BASE_ROOTS + (V110, V101, V111),
    BASE_ROOTS + (V110, V011, V111),
    BASE_ROOTS + (V101, V011, V111),
)

# claimed toral spans per case and root; () means contained in the nil part.
PUBLISHED_ADMISSIBLE_SPANS: Dict[int, Dict[Root, Tuple[Root, ...]]] = {
    1: {V100: (), V010: (), V001: ()},
    2: {V100: (V010,), V010: (V100,), V001: (), V110: (V110,)},
    3: {V100: (V001,), V010: (), V001: (V100,), V101: (V101,)},
    4: {V100: (), V010: (V001,), V001: (V010,), V011: (V011,)},
    5: {V100: (), V010: (), V001: (), V111: ()},
    6: {V100: (V011,), V010: (), V001: (), V110: (), V101: ()},
    7: {V100: (), V010: (V101,), V001: (), V110: (V110,), V011: (V011,)},
    8: {V100: (), V010: (), V001: (), V110: (V110, V001), V111: ()},
    9: {V100: (), V010: (), V001: (V100, V010), V101: (), V011: ()},
    10: {V100: (), V010: (), V001: (), V101: (V010, V101), V111: ()},
    11: {V100: (), V010: (), V001: (), V011: (V010, V101), V111: ()},
    12: {V100: (V011,), V010: (V101,), V001: (V110,),
         V110: (V110,), V101: (V101,), V011: (V011,)},
    13: {V100: (V011,), V010: (V100,), V001: (V100,),
         V110: (V111,), V101: (V111,), V111: (V011,)},
    14: {V100: (V010,), V010: (V101,), V001: (V010,),
         V110: (V111,), V011: (V111,), V111: (V101,)},
    15: {V100: (V001,), V010: (V001,), V001: (V110,),
         V101: (V111,), V011: (V111,), V111: (V110,)},
}

# dimension-pattern lists, one raw integer tuple per printed item:
# (total, torus_dim, nil_dim, seven root dims).  Kept verbatim: the dim-13
# list contains a malformed 9-int item, dim 15 repeats its last item, and
# dim 16 prints one class three times.
PUBLISHED_PATTERN_LISTS: Dict[int, Tuple[Tuple[int, ...], ...]] = {
    10: (
        (10, 3, 0, 1, 1, 1, 1, 1, 1, 1),
    ),
    11: (
        (11, 3, 0, 2, 1, 1, 1, 1, 1, 1),
        (11, 3, 1, 1, 1, 1, 1, 1, 1, 1),
    ),
    12: (
        (12, 3, 0, 3, 1, 1, 1, 1, 1, 1),
        (12, 3, 0, 2, 2, 1, 1, 1, 1, 1),
        (12, 3, 1, 2, 1, 1, 1, 1, 1, 1),
        (12, 3, 2, 1, 1, 1, 1, 1, 1, 1),
    ),
    13: (
        (13, 3, 0, 4, 1, 1, 1, 1, 1, 1),
        (13, 3, 0, 3, 2, 1, 1, 1, 1, 1),
        (13, 3, 0, 2, 2, 2, 1, 1, 1, 1),
        (13, 3, 1, 1, 1, 1, 1, 1, 1),
        (13, 3, 2, 2, 1, 1, 1, 1, 1, 1),
        (13, 3, 1, 3, 1, 1, 1, 1, 1, 1),
        (13, 3, 1, 2, 2, 1, 1, 1, 1, 1),
    ),
    14: (
        (14, 3, 0, 5, 1, 1, 1, 1, 1, 1),
        (14, 3, 0, 4, 2, 1, 1, 1, 1, 1),
        (14, 3, 0, 3, 3, 1, 1, 1, 1, 1),
        (14, 3, 0, 3, 2, 2, 1, 1, 1, 1),
        (14, 3, 0, 2, 2, 2, 2, 1, 1, 1),
        (14, 3, 1, 2, 2, 2, 1, 1, 1, 1),
        (14, 3, 1, 3, 2, 1, 1, 1, 1, 1),
        (14, 3, 1, 4, 1, 1, 1, 1, 1, 1),
        (14, 3, 2, 2, 2, 1, 1, 1, 1, 1),
        (14, 3, 2, 3, 1, 1, 1, 1, 1, 1),
        (14, 3, 3, 2, 1, 1, 1, 1, 1, 1),
        (14, 3, 4, 1, 1, 1, 1, 1, 1, 1),
    ),
    15: (
        (15, 3, 5, 1, 1, 1, 1, 1, 1, 1),
        (15, 3, 4, 2, 1, 1, 1, 1, 1, 1),
        (15, 3, 3, 2, 2, 1, 1, 1, 1, 1),
        (15, 3, 2, 3, 2, 1, 1, 1, 1, 1),
        (15, 3, 2, 2, 2, 2, 1, 1, 1, 1),
        (15, 3, 1, 3, 2, 2, 1, 1, 1, 1),
        (15, 3, 0, 6, 1, 1, 1, 1, 1, 1),
        (15, 3, 0, 5, 2, 1, 1, 1, 1, 1),
        (15, 3, 0, 4, 3, 1, 1, 1, 1, 1),
        (15, 3, 0, 3, 3, 2, 1, 1, 1, 1),
        (15, 3, 0, 3, 2, 2, 2, 1, 1, 1),
        (15, 3, 0, 2, 2, 2, 2, 2, 1, 1),
        (15, 3, 0, 2, 2, 2, 2, 2, 1, 1),
    ),
    16: (
        (16, 3, 6, 1, 1, 1, 1, 1, 1, 1),
        (16, 3, 5, 2, 1, 1, 1, 1, 1, 1),
        (16, 3, 4, 3, 1, 1, 1, 1, 1, 1),
        (16, 3, 4, 2, 2, 1, 1, 1, 1, 1),
        (16, 3, 3, 4, 1, 1, 1, 1, 1, 1),
        (16, 3, 3, 3, 2, 1, 1, 1, 1, 1),
        (16, 3, 3, 2, 2, 2, 1, 1, 1, 1),
        (16, 3, 2, 5, 1, 1, 1, 1, 1, 1),
        (16, 3, 2, 4, 2, 1, 1, 1, 1, 1),
        (16, 3, 2, 3, 3, 1, 1, 1, 1, 1),
        (16, 3, 2, 3, 2, 2, 1, 1, 1, 1),
        (16, 3, 2, 2, 2, 2, 2, 1, 1, 1),
        (16, 3, 1, 6, 1, 1, 1, 1, 1, 1),
        (16, 3, 1, 5, 2, 1, 1, 1, 1, 1),
        (16, 3, 1, 4, 3, 1, 1, 1, 1, 1),
        (16, 3, 1, 4, 2, 2, 1, 1, 1, 1),
        (16, 3, 1, 3, 3, 2, 1, 1, 1, 1),
        (16, 3, 1, 2, 2, 2, 2, 2, 1, 1),
        (16, 3, 0, 7, 1, 1, 1, 1, 1, 1),
        (16, 3, 0, 6, 2, 1, 1, 1, 1, 1),
        (16, 3, 0, 5, 2, 2, 1, 1, 1, 1),
        (16, 3, 0, 4, 3, 2, 1, 1, 1, 1),
        (16, 3, 0, 4, 2, 2, 2, 1, 1, 1),
        (16, 3, 0, 4, 2, 2, 2, 1, 1, 1),
        (16, 3, 0, 4, 2, 2, 2, 1, 1, 1),
        (16, 3, 0, 3, 3, 2, 2, 1, 1, 1),
        (16, 3, 0, 3, 2, 2, 2, 2, 1, 1),
        (16, 3, 0, 2, 2, 2, 2, 2, 2, 1),
    ),
}


def raw_pattern_string(raw: Tuple[int, ...]) -> str:
    """Printed form of a raw list item, e.g. (14:3,0,2,2,2,2,1,1,1)."""
    return f"({raw[0]}:{','.join(str(x) for x in raw[1:])})"
