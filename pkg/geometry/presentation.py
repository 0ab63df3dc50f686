"""Fundamental group of the essential component minus the singular locus

Words are tuples of nonzero integers: generator k is written k and its inverse -k.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as _sympy_snf

from algebra.cyclotomic import CycloScalar
from algebra.polynomial import MultiPoly
from errors import InvariantViolation
from geometry.resolution import ResolutionTrace

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

CASE_R_ODD = "r-odd"
CASE_R_EVEN = "r-even"
PROVENANCE_RAW = "raw-ZVK"
PROVENANCE_SIMPLIFIED = "simplified"

RAW_GENERATORS = ("g1", "g2", "γ")
SIMPLIFIED_GENERATORS = ("α", "β", "γ")
HOLONOMY_LABELS = {"α": "h_alpha", "β": "h_beta", "γ": "h_gamma"}
MERIDIAN_ORIENTATION = "counterclockwise along the boundary of the disc around each puncture"
CURVE_VARIABLES = ("y", "t")

_SUPERSCRIPT = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


def free_reduce(word: Sequence[int]) -> Word:
    stack: List[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def cyclic_reduce(word: Sequence[int]) -> Word:
    reduced = list(free_reduce(word))
    while len(reduced) > 1 and reduced[0] == -reduced[-1]:
        reduced = reduced[1:-1]
    return tuple(reduced)


def invert(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def word_power(word: Sequence[int], exponent: int) -> Word:
    base = tuple(word) if exponent >= 0 else invert(word)
    return free_reduce(base * abs(exponent))


def substitute(word: Sequence[int], images: Dict[int, Word]) -> Word:
    """Image of a word under the endomorphism generator k -> images[k]"""
    out: List[int] = []
    for letter in word:
        image = images.get(abs(letter), (abs(letter),))
        out.extend(image if letter > 0 else invert(image))
    return free_reduce(out)


def half_twist(power: int = 1) -> Dict[int, Word]:
    """sigma^power on the free group <g1, g2>: sigma(g1) = g2, sigma(g2) = g2 g1 g2^-1"""
    base = {1: (2,), 2: (2, 1, -2)}
    images = {1: (1,), 2: (2,)}
    for _ in range(power):
        images = {k: substitute(images[k], base) for k in images}
    return images


def exponent_sums(word: Sequence[int], rank: int) -> List[int]:
    row = [0] * rank
    for letter in word:
        row[abs(letter) - 1] += 1 if letter > 0 else -1
    return row


def render_word(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    pieces = []
    letters = list(word)
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        name = names[abs(letters[i]) - 1]
        exponent = (j - i) * (1 if letters[i] > 0 else -1)
        pieces.append(name if exponent == 1 else name + str(exponent).translate(_SUPERSCRIPT))
        i = j
    return "".join(pieces)


@dataclass
class Presentation:
    generators: Tuple[str, ...]
    relations: List[Tuple[Word, Word]]
    case: str
    provenance: str
    symbolic: List[str] = field(default_factory=list)
    parameters: Dict[str, object] = field(default_factory=dict)
    substitution: Dict[str, Word] = field(default_factory=dict)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a presentation needs at least one generator")

    @property
    def relators(self) -> List[Word]:
        return [cyclic_reduce(lhs + invert(rhs)) for lhs, rhs in self.relations]

    def render(self) -> str:
        lines = [f"generators: {', '.join(self.generators)}"]
        for lhs, rhs in self.relations:
            lines.append(f"{render_word(lhs, self.generators)} = {render_word(rhs, self.generators)}")
        lines.extend(self.symbolic)
        for name, word in self.substitution.items():
            lines.append(f"{name} := {render_word(word, RAW_GENERATORS)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [{"lhs": list(lhs), "rhs": list(rhs)} for lhs, rhs in self.relations],
            "relators": [list(w) for w in self.relators],
            "case": self.case,
            "provenance": self.provenance,
            "symbolic": list(self.symbolic),
            "parameters": dict(sorted(self.parameters.items())),
            "substitution": {k: list(v) for k, v in self.substitution.items()},
        }


@dataclass
class PlaneCurveData:
    delta: int
    roots: Tuple[CycloScalar, ...]
    exponents: Tuple[int, ...]
    r: int
    polynomial: MultiPoly

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "roots": [a.to_json() for a in self.roots],
            "exponents": list(self.exponents),
            "r": self.r,
            "polynomial": self.polynomial.render(),
        }


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def render(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else "Z" + str(self.free_rank).translate(_SUPERSCRIPT))
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "rendered": self.render()}


def smith_normal_form(mat: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith normal form, d1 | d2 | ..., all nonnegative"""
    rows = [list(row) for row in mat]
    if not rows or not rows[0]:
        return []
    snf = _sympy_snf(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = sorted(d for d in diagonal if d)
    return nonzero + [0] * (len(diagonal) - len(nonzero))


def relation_matrix(pres: Presentation) -> List[List[int]]:
    rank = len(pres.generators)
    return [row for row in (exponent_sums(w, rank) for w in pres.relators) if any(row)]


def abelianize_rows(rows: List[List[int]], rank: int) -> AbelianGroup:
    diagonal = smith_normal_form(rows)
    nonzero = [d for d in diagonal if d]
    return AbelianGroup(free_rank=rank - len(nonzero), torsion=tuple(d for d in nonzero if d > 1))


def abelianization(pres: Presentation) -> AbelianGroup:
    return abelianize_rows(relation_matrix(pres), len(pres.generators))


def plane_curve(trace: ResolutionTrace) -> PlaneCurveData:
    params = trace.params
    order = trace.input.order
    y = MultiPoly.variable(CURVE_VARIABLES, order, "y")
    t = MultiPoly.variable(CURVE_VARIABLES, order, "t")
    h = MultiPoly.constant(CURVE_VARIABLES, order, 1)
    for a_i, exponent in zip(params.a, params.d_prime):
        h = h * (y ** params.delta - a_i) ** exponent
    return PlaneCurveData(delta=params.delta, roots=tuple(params.a), exponents=tuple(params.d_prime),
                          r=params.r, polynomial=t ** 2 - h ** params.r)


# the g_k^(σ^b) = γ⁻¹g_kγ relations stay symbolic, so the word relations alone present a group
# that maps onto pi1: the actual group is a quotient of it
RAW_GROUP_NOTE = ("raw group: word relations only; the symbolic γ-conjugation relations are not imposed, "
                  "so pi1 is a quotient of this group and its abelianization a quotient of the one shown")

def raw_presentation(r: int) -> Presentation:
    twisted = half_twist(r)
    relations = [(twisted[k], (k,)) for k in (1, 2)]
    symbolic = [f"g{k}^(σ^b) = γ⁻¹g{k}γ" for k in (1, 2)]
    return Presentation(
        generators=RAW_GENERATORS, relations=relations,
        case=CASE_R_ODD if r % 2 else CASE_R_EVEN, provenance=PROVENANCE_RAW,
        symbolic=symbolic,
        parameters={"r": r, "b": "b", "sigma": "g1 -> g2, g2 -> g2 g1 g2⁻¹", "meridian": MERIDIAN_ORIENTATION},
    )


def simplified_presentation(r: int) -> Presentation:
    m = r // 2
    alpha, beta, gamma = (1,), (2,), (3,)
    alpha_r = word_power(alpha, r)
    if r % 2:
        first = (beta + alpha_r, alpha_r + beta)
    else:
        first = (alpha_r, word_power(beta, 2))
    relations = [first, (gamma + alpha, alpha + gamma)]
    return Presentation(
        generators=SIMPLIFIED_GENERATORS, relations=relations,
        case=CASE_R_ODD if r % 2 else CASE_R_EVEN, provenance=PROVENANCE_SIMPLIFIED,
        parameters={"r": r, "m": m},
        substitution={"α": (2, 1), "β": word_power((2, 1), m) + (2,), "γ": (3,)},
    )


def presentations(trace: ResolutionTrace) -> Tuple[Presentation, Presentation]:
    if trace.essential_component is None:
        raise InvariantViolation("no essential component: resolve the input before computing pi1")
    r = trace.params.r
    return raw_presentation(r), simplified_presentation(r)


def substitution_consistent(raw: Presentation, simplified: Presentation) -> bool:
    """Whether the substituted simplified relators lie in the abelianized raw relation lattice"""
    images = {i + 1: simplified.substitution[name] for i, name in enumerate(simplified.generators)}
    rank = len(raw.generators)
    rows = relation_matrix(raw)
    extra = [exponent_sums(substitute(w, images), rank) for w in simplified.relators]
    return abelianize_rows(rows, rank) == abelianize_rows(rows + [e for e in extra if any(e)], rank)


@dataclass
class Pi1Report:
    curve: PlaneCurveData
    raw: Presentation
    simplified: Presentation
    raw_abelian: AbelianGroup
    simplified_abelian: AbelianGroup
    consistent: bool
    essential: Optional[str] = None

    @property
    def agree(self) -> bool:
        return self.raw_abelian == self.simplified_abelian

    def render(self) -> str:
        lines = [f"essential component: {self.essential}",
                 f"curve: {self.curve.polynomial.render()} = 0",
                 "", "[raw]", self.raw.render(),
                 "", "[simplified]", self.simplified.render(),
                 f"holonomy: {', '.join(f'{g} -> {h}' for g, h in HOLONOMY_LABELS.items())}",
                 "", f"abelianization (raw, word relations only): {self.raw_abelian.render()}",
                 f"abelianization (simplified): {self.simplified_abelian.render()}",
                 f"abelianizations agree: {self.agree}",
                 f"note: {RAW_GROUP_NOTE}"]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "essential": self.essential,
            "curve": self.curve.to_json(),
            "raw": self.raw.to_json(),
            "simplified": self.simplified.to_json(),
            "holonomy": dict(HOLONOMY_LABELS),
            "raw_group_note": RAW_GROUP_NOTE,
            "abelianization": {
                "raw": self.raw_abelian.to_json(),
                "simplified": self.simplified_abelian.to_json(),
                "agree": self.agree,
                "substitution_consistent": self.consistent,
            },
        }


def fundamental_group(trace: ResolutionTrace) -> Pi1Report:
    raw, simplified = presentations(trace)
    report = Pi1Report(
        curve=plane_curve(trace), raw=raw, simplified=simplified,
        raw_abelian=abelianization(raw), simplified_abelian=abelianization(simplified),
        consistent=substitution_consistent(raw, simplified),
        essential=trace.essential_component,
    )
    if not report.agree:
        logger.warning("raw and simplified abelianizations differ for r=%d: %s vs %s",
                       trace.params.r, report.raw_abelian.render(), report.simplified_abelian.render())
    logger.info("pi1 computed: %s", report.simplified_abelian.render())
    return report
