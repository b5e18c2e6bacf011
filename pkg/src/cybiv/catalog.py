"""Published data for W1, W2 and W3, transcribed as printed.

Everything is given in the U chart with the names z, u1, u2 (xi, v1, v2 for
V-chart data).  Entries are kept verbatim, including the ones that turn out to
be wrong; the verification harness reports those as discrepancies instead of
silently correcting them.  Corrected forms live next to them with a note.
"""

from __future__ import annotations

Triple = tuple[str, str, str]

# module generators

GENERATORS: dict[int, dict[str, Triple]] = {
    1: {
        "e1": ("0", "1", "0"),
        "e2": ("0", "0", "1"),
        "e3": ("u1", "z", "0"),
        "e4": ("u2", "0", "z"),
    },
    2: {
        "e1": ("0", "1", "0"),
        "e2": ("u1", "0", "0"),
        "e3": ("0", "z", "0"),
        "e4": ("0", "0", "1"),
        "e5": ("2*z*u1", "z^2", "0"),
    },
    3: {
        "e1": ("u1", "0", "0"),
        "e2": ("u1*u2", "0", "0"),
        "e3": ("0", "1", "0"),
        "e4": ("0", "z", "0"),
        "e5": ("0", "z^2", "0"),
        "e6": ("3*z^2*u1", "z^3", "0"),
        "e7": ("0", "0", "u1"),
        "e8": ("0", "0", "z*u1"),
        "e9": ("-z*u1*u2", "0", "z^2*u1"),
        "e10": ("0", "u2", "0"),
        "e11": ("0", "z*u2", "0"),
        "e12": ("3*z*u1*u2", "z^2*u2", "0"),
        "e13": ("0", "0", "u1*u2"),
    },
}

GENERATOR_COUNTS = {1: 4, 2: 5, 3: 13}
RELATION_COUNTS = {1: 1, 2: 2, 3: 13}

# relations, as maps generator label -> coefficient

RELATIONS: dict[int, list[dict[str, str]]] = {
    1: [{"e1": "z*u2", "e2": "-z*u1", "e3": "-u2", "e4": "u1"}],
    2: [
        {"e3": "u1", "e1": "-z*u1"},
        {"e5": "u2", "e3": "-z*u2", "e2": "-2*z*u2"},
    ],
    3: [
        {"e2": "u1", "e1": "-u1*u2"},
        {"e10": "u1", "e3": "-u1*u2"},
        {"e13": "u1", "e7": "-u1*u2"},
        {"e12": "z*u1", "e6": "-u1*u2"},
        {"e13": "z*u1", "e8": "-u1*u2"},
        {"e11": "u1", "e10": "-z*u1"},
        {"e4": "u1", "e3": "-z*u1"},
        {"e5": "u1", "e4": "-z*u1"},
        {"e8": "u1", "e7": "-z*u1"},
        {"e6": "u1", "e5": "-z*u1", "e1": "-3*z^2*u1"},
        {"e9": "u1", "e8": "-z*u1", "e2": "z*u1"},
        {"e12": "u1", "e11": "-z*u1", "e1": "-3*z*u1"},
    ],
}

# Printed relations that fail, with the nearest valid form.
RELATION_CORRECTIONS: dict[tuple[int, int], dict[str, str]] = {
    (2, 1): {"e5": "u1", "e3": "-z*u1", "e2": "-2*z*u1"},
    (3, 11): {"e12": "u1", "e11": "-z*u1", "e2": "-3*z*u1"},
}

# bases of the section spaces used to count dimensions

W1_VECTOR_SPACE: list[Triple] = [
    ("0", "1", "0"),
    ("0", "0", "1"),
    ("u1", "z", "0"),
    ("u2", "0", "z"),
    ("u1^2", "0", "0"),
    ("u2^2", "0", "0"),
    ("u1*u2", "0", "0"),
    ("0", "u1", "0"),
    ("0", "z*u1", "0"),
    ("z*u1^2", "z^2*u1", "0"),
    ("0", "u2", "0"),
    ("0", "z*u2", "0"),
    ("z*u1*u2", "z^2*u2", "0"),
]

W2_NEIGHBORHOOD_TERMS: list[Triple] = [
    ("0", "0", "1"),
    ("0", "0", "u1"),
    ("0", "0", "z*u1"),
    ("0", "0", "z^2*u1"),
    ("0", "0", "u2"),
    ("u1", "0", "0"),
    ("0", "1", "0"),
    ("0", "z", "0"),
    ("2*z*u1", "z^2", "0"),
    ("0", "u1", "0"),
    ("0", "z*u1", "0"),
    ("0", "z^2*u1", "0"),
    ("0", "z^3*u1", "0"),
]


def _w3_terms() -> list[Triple]:
    out: list[Triple] = []
    out += [("0", "0", f"z^{l}*u1") for l in range(2)]
    out += [("0", f"z^{l}", "0") for l in range(3)]
    out += [("0", f"z^{l}*u2", "0") for l in range(3)]
    out += [(f"z^{l}*u1^2", "0", "0") for l in range(5)]
    out += [("0", "0", f"z^{l}*u1^2") for l in range(5)]
    out += [("0", f"z^{l}*u1*u2", "0") for l in range(5)]
    out += [("0", f"z^{l}*u1", "0") for l in range(6)]
    out += [("0", f"z^{l}*u1^2", "0") for l in range(9)]
    out += [
        ("u1", "0", "0"),
        ("u1*u2", "0", "0"),
        ("0", "0", "u1*u2"),
        ("3*z^2*u1", "z^3", "0"),
        ("3*z*u1*u2", "z^2*u2", "0"),
        ("3*z^5*u1^2", "z^6*u1", "0"),
        ("3*z^8*u1^3", "z^9*u1^2", "0"),
        ("3*z^4*u1^2*u2", "z^5*u1*u2", "0"),
        ("-z*u1*u2", "0", "z^2*u1"),
        ("-u1*u2^2", "0", "z*u1*u2"),
    ]
    return out


W3_NEIGHBORHOOD_TERMS: list[Triple] = _w3_terms()

# claimed dimensions: (k, neighborhood) -> dimension
SECTION_DIMENSIONS = {(1, 2): 13, (2, 1): 13, (3, 2): 42}
SECTION_TERMS = {(1, 2): W1_VECTOR_SPACE, (2, 1): W2_NEIGHBORHOOD_TERMS, (3, 2): W3_NEIGHBORHOOD_TERMS}

# degeneracy loci: list of (chart, equations) pieces; "types" lists glued
# component types where those are what is printed

DEGENERACY_PIECES: dict[tuple[int, str], list[tuple[str, tuple[str, ...]]]] = {
    (1, "e2"): [("V", ("xi", "v2"))],
    (3, "e1"): [("U", ("u1",)), ("V", ("xi",)), ("V", ("v1",))],
    (3, "e2"): [("U", ("u1",)), ("U", ("u2",)), ("V", ("v1",)), ("V", ("v2",))],
    (3, "e3"): [("V", ("xi",))],
    (3, "e4"): [("U", ("z",)), ("V", ("xi",))],
    (3, "e5"): [("U", ("z",)), ("V", ("xi", "v1"))],
    (3, "e10"): [("U", ("u2",)), ("V", ("xi",)), ("V", ("v2",))],
    (3, "e11"): [("U", ("z",)), ("U", ("u2",)), ("V", ("v2",)), ("V", ("xi", "v1"))],
    (3, "e7"): [("U", ("u1",)), ("V", ("xi",)), ("V", ("v1",))],
    (3, "e8"): [("U", ("z",)), ("U", ("u1",)), ("V", ("xi", "v2")), ("V", ("v1",))],
    (3, "e13"): [("U", ("u1",)), ("U", ("u2",)), ("V", ("v1",)), ("V", ("v2",))],
}

DEGENERACY_TYPES: dict[tuple[int, str], list[str]] = {
    (2, "e1"): ["plane C2"],
    (2, "e2"): ["P1xC"],
    (2, "e3"): ["plane C2", "line C"],
    (2, "e4"): [],
}

# the sentence claiming that e11 on W3 degenerates in five components
DEGENERACY_COUNT_CLAIMS = {(3, "e11"): 5}

# Casimirs: generator -> U-chart variables the Casimir functions depend on

CASIMIRS: dict[tuple[int, str], tuple[str, ...]] = {
    (1, "e2"): ("u2",),
    (2, "e1"): ("u1",),
    (2, "e2"): ("z",),
    (2, "e3"): ("u1",),
    (2, "e4"): ("u2",),
}

CASIMIR_CLASSES: dict[int, list[list[str]]] = {
    3: [["e1", "e2"], ["e3", "e4", "e5", "e10", "e11"], ["e7", "e8", "e13"]],
}
CASIMIR_CLASS_FUNCTIONS = {3: [("z",), ("u1",), ("u2",)]}

# the foliation summary lists e13 among the generators with constant u1
FOLIATION_LISTS: dict[int, dict[tuple[str, ...], list[str]]] = {
    3: {
        ("z",): ["e1", "e2"],
        ("u1",): ["e3", "e4", "e5", "e10", "e11", "e13"],
        ("u2",): ["e7", "e8"],
    },
}

# Poisson structures on the surfaces Z_k, as (U, V) coefficient pairs

SURFACE_STRUCTURES: dict[int, list[tuple[str, str]]] = {
    -1: [("1", "-xi^3"), ("z", "-xi^2"), ("z^2", "-xi"), ("z^3", "1")],
    0: [("1", "-xi^2"), ("z", "-xi"), ("z^2", "-1")],
    1: [("1", "-xi"), ("z", "-1")],
    2: [("1", "-1")],
    3: [("u", "-xi^2*v"), ("z*u", "-xi*v"), ("z^2*u", "-v")],
}

# isomorphisms: (k, source, target, word); word applied to the source gives
# the target up to a nonzero constant

ISOMORPHISMS: list[tuple[int, str, str, tuple[str, ...]]] = [
    (1, "e2", "e1", ("s0",)),
    (1, "e2", "e4", ("s1",)),
    (1, "e2", "e3", ("s1", "s0")),
    (2, "e1", "e5", ("s1",)),
    (3, "e3", "e6", ("s1",)),
    (3, "e7", "e9", ("s1",)),
    (3, "e10", "e12", ("s1",)),
]

# embedding witnesses as printed in the generation proofs:
# (generator, embedding, structure index, multiplier, correction)
# A multiplier of None stands for the undefined symbol "s", read as an unknown
# nonzero constant; a correction is (embedding, index, multiplier) or None.

Witness = tuple[str, str, int, str | None, tuple[str, int, str] | None]

PRINTED_WITNESSES: dict[int, list[Witness]] = {
    1: [
        ("e2", "j1", 0, "1", None),
        ("gamma_1", "j1", 0, None, None),
        ("e3", "j2", 0, "1", ("j2", 1, "1")),
        ("e1", "j2", 0, None, None),
    ],
    2: [
        ("e4", "j1", 0, "1", None),
        ("e1", "j2", 0, "1", None),
        ("e2", "j2", 1, None, ("j0", 0, "u")),
        ("e3", "j0", 0, "1", ("j2", 1, "1")),
    ],
    3: [
        ("e7", "j1", 0, "1", None),
        ("e8", "j1", 0, "1", ("j1", 1, "1")),
        ("e3", "j2", 0, "1", None),
        ("e4", "j2", 1, "1", None),
        ("e5", "j2", 2, "1", None),
        ("e10", "j2", 0, "u", None),
        ("e11", "j2", 1, "u", None),
        ("e1", "j0", 0, "u", None),
        ("e2", "j0", 0, "u*v", None),
    ],
}

# the four principal embeddings of (Z_1, pi_0): j1 followed by a transport
PRINCIPAL_EMBEDDINGS: dict[str, tuple[str, ...]] = {
    "e2": (),
    "e1": ("s0",),
    "e4": ("s1",),
    "e3": ("s1", "s0"),
}

# the multiplier used on Z_-1, given in both charts
Z_MINUS1_MULTIPLIER = ("u", "xi^-1*v")

# fibre used by j0 (the plane over z = value)
J0_FIBRE = {2: 1, 3: 0}

# the W1 transition matrix as printed (rows of U-chart polynomials)
W1_TRANSITION_PRINTED = (
    ("z^2", "-z*u1", "-z*u2"),
    ("0", "z^-1", "0"),
    ("0", "0", "z^-1"),
)

# V-chart coefficients printed for the chart swap of W2 e1 and for W1 e2
V_COEFFICIENTS = {
    (2, "e1"): ("-2*xi*v1", "-xi^2", "0"),
    (1, "e2"): ("-v2", "0", "xi"),
}

# symbols used in the W1 generation proof without a definition
UNDEFINED_SYMBOLS = ("gamma_1", "s*pi_0")
