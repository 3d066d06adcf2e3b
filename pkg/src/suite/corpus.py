"""
Built-in corpus for the acceptance suite.

Each entry pairs a descriptor document (the same JSON shape the CLI reads)
with the values the checks compare against. `default_corpus()` hands out a
fresh copy, so callers can corrupt an entry without touching the module data.
"""

import copy
from typing import Any, Dict

Corpus = Dict[str, Dict[str, Any]]

_CORPUS: Corpus = {
    # three lines through the origin over F_2, no rational parameter of degree 3
    "three_lines": {
        "doc": {"field": {"p": 2}, "vars": ["x", "y"], "generators": ["x*y*(x+y)"]},
        "curated": [["x^2+x*y+y^2"], ["x^2+y^3"]],
        "scan_bound": 3,
        "expect": {
            "e_m": 3,
            "hs_lengths": [1, 3, 6, 9, 12],
            "scan_contains": [6, 7],
            "scan_excludes": [3],
            "curated_gcd": 1,
            "n": 1,
            "places": 3,
        },
    },
    "three_lines_f4": {
        "doc": {"field": {"p": 2, "k": 2}, "vars": ["x", "y"], "generators": ["x*y*(x+y)"]},
        "scan_bound": 1,
        "expect": {"scan_contains": [3]},
    },
    # cones over projective varieties
    "conjugate_pair": {
        "doc": {"field": {"p": 2}, "ambient": "projective", "vars": ["x", "y"], "ideal": ["x^2+x*y+y^2"]},
        "curated": [["x"], ["y"]],
        "degree": 2,
        "expect": {"delta": 2, "e_vertex": 2, "curated_gcd": 2, "status": "EQUALITY_WITNESSED"},
    },
    "conic": {
        "doc": {"field": {"p": 3}, "ambient": "projective", "vars": ["x", "y", "z"], "ideal": ["x^2+y^2+z^2"]},
        "curated": [["x-y", "z"], ["x-y", "z-x+x^2"]],
        "degree": 2,
        "expect": {"delta": 1, "e_vertex": 2, "curated": [2, 3], "curated_gcd": 1, "status": "EQUALITY_WITNESSED"},
    },
    # plane germs resolved by blow-ups
    "germs": {
        "items": [
            {"field": {"p": 2}, "germ": "x^2+x*y+y^2", "n": 2, "degrees": [2]},
            {"field": {"p": 2}, "germ": "x*y*(x+y)", "n": 1, "degrees": [1, 1, 1], "components": ["x", "y", "x+y"]},
            {"field": {"p": 5}, "germ": "y^2-x^3", "n": 1, "degrees": [1]},
            {"field": {"p": 3}, "germ": "y^2+x^2+x^3", "n": 2, "degrees": [2]},
            {
                "field": {"p": 2},
                "germ": "x*(x^2+x*y+y^2)",
                "n": 1,
                "degrees": [1, 2],
                "components": ["x", "x^2+x*y+y^2"],
            },
        ],
    },
    # arithmetic surfaces over F_q[[t]]
    "models": {
        "items": [
            {
                "doc": {
                    "field": {"p": 3},
                    "f": "x^2+y^2+t",
                    "components": [{"g": "x^2+y^2", "r": 1}],
                },
                "D": 2,
                "origin_e_fiber": 2,
                "lift": {"point": ["a", "1"], "ext": 2, "g": "y-1", "degree": 2},
                "expect": {"gcd": 2},
            },
            {
                "doc": {
                    "field": {"p": 3},
                    "f": "t-(x^2+y^2+1)^2",
                    "components": [{"g": "x^2+y^2+1", "r": 2}],
                },
                "D": 2,
                "lift": {"point": ["1", "1"], "ext": 1, "g": "x-1", "degree": 2},
                "expect": {"gcd": 2},
            },
            {
                "doc": {
                    "field": {"p": 2},
                    "f": "x*y-t",
                    "components": [{"g": "x", "r": 1}, {"g": "y", "r": 1}],
                },
                "D": 1,
                "origin_e_fiber": 2,
                "lift": {"point": ["1", "0"], "ext": 1, "g": "x-1", "degree": 1, "series": "t"},
                "expect": {"gcd": 1},
            },
        ],
    },
    # point counts
    "census": {
        "projective_spaces": [
            {"field": {"p": 2}, "ambient": "projective", "vars": ["x", "y"], "ideal": []},
            {"field": {"p": 2}, "ambient": "projective", "vars": ["x", "y", "z"], "ideal": []},
        ],
        "identity_degree": 6,
        "open_line": {
            "doc": {
                "field": {"p": 2},
                "ambient": "projective",
                "vars": ["x", "y"],
                "ideal": [],
                "excluded": ["x*y*(x+y)"],
            },
            "D": 3,
            "delta": 1,
        },
        "line_pair": {
            "doc": {"field": {"p": 3}, "ambient": "affine", "vars": ["x", "y"], "ideal": ["x^2+y^2"]},
            "D": 2,
            "delta": 1,
            "delta_reg": 2,
        },
    },
    "fermat": {"primes": [5, 7, 11, 13], "constants": {"5": 5, "7": 7}},
    "properties": {
        "field_orders": [[2, 1], [3, 1], [2, 2], [5, 1], [7, 1], [2, 3], [3, 2], [11, 1], [13, 1], [2, 4]],
        "hypersurfaces": [
            {"field": {"p": 2}, "germ": "x*y"},
            {"field": {"p": 2}, "germ": "x^2+y^3"},
            {"field": {"p": 2}, "germ": "x*y*(x+y)"},
            {"field": {"p": 3}, "germ": "y^2-x^3"},
            {"field": {"p": 3}, "germ": "x^2+y^2+x^3"},
            {"field": {"p": 5}, "germ": "y^2-x^5"},
            {"field": {"p": 5}, "germ": "x^4+y^4+x^2*y"},
            {"field": {"p": 2}, "germ": "x^3+y^5+x*y^3"},
            {"field": {"p": 3}, "germ": "x+y^2"},
            {"field": {"p": 7}, "germ": "x^2*y^2+x^5+y^5"},
            {"field": {"p": 2}, "germ": "x^2+x*y+y^2+x^3"},
        ],
        "additivity": {
            "field": {"p": 2},
            "germ": "x^2*y",
            "components": [["x", 2], ["y", 1]],
            "e": 3,
        },
        "associativity": {
            "doc": {"field": {"p": 3}, "vars": ["x", "y", "z"], "generators": ["x^2+y^2+z^2"]},
            "prefix": ["x-y"],
            "suffix": ["z-x+x^2"],
            "decomposition": [[["x-y", "z-x"], 1, 2], [["x-y", "z+x"], 1, 1]],
            "e": 3,
        },
        "determinism": {"field": {"p": 2}, "vars": ["x", "y"], "generators": ["x*y*(x+y)"]},
    },
}


def default_corpus() -> Corpus:
    return copy.deepcopy(_CORPUS)
