"""Seeded exact property suites run by ``tropmarkov verify``."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List

import numpy as np

from .models.command_config import CommandConfig
from .models.command_types import Suite
from ..dynamics.classical import (
    MAX_MARKOV_DEPTH,
    cos_param,
    euclid_path,
    gram_det,
    is_markov,
    markov_integral,
    markov_numbers,
    markov_path,
    vieta_markov,
    vieta_ratio,
)
from ..dynamics.ergodic_lab import period_detect
from ..dynamics.farey_paths import (
    ContinuedFraction,
    cf_to_word,
    farey_parents,
    lambda_via_euclid,
    lambda_via_matrices,
    path_matrix,
    reciprocal_cf,
)
from ..dynamics.sampling import (
    make_rng,
    random_generator_words,
    random_hyperbolic_matrices,
    random_path_words,
    random_surface_points,
    random_torus_points,
    random_trop_points,
)
from ..dynamics.torus_fold import IntMatrix2, TorusPoint, fold, induced_map, semiconj_residual, torus_act, unfold
from ..dynamics.tropical import (
    f,
    f_closed,
    on_surface,
    phi,
    project_uv,
    psi,
    rho,
    sigma,
    trop_markov_step,
    vertices,
)
from ..dynamics.words import PathWord
from ..utils.numeric import format_scalar

LN_PHI = math.log((1.0 + math.sqrt(5.0)) / 2.0)

# Small Markov numbers, all of which sit within five edges of the root
KNOWN_MARKOV_NUMBERS = [1, 2, 5, 13, 29, 34, 89, 169, 194, 233]

CAT_MAP = IntMatrix2(2, 1, 1, 1)

# Failure labels kept per suite in the report
_MAX_REPORTED = 10


@dataclass
class SuiteResult:
    """Pass/fail tally of one suite."""
    suite: Suite
    checks: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def check(self, condition: bool, label: str) -> None:
        self.checks += 1
        if not condition:
            self.failed += 1
            if len(self.failures) < _MAX_REPORTED:
                self.failures.append(label)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "checks": self.checks,
            "failed": self.failed,
            "passed": self.passed,
            "failures": list(self.failures),
            **self.details,
        }


class Verifier:
    """Runs the exact suites; every suite draws from its own generator seeded with ``seed``."""

    def __init__(self, config: CommandConfig):
        self.config = config
        self._suites: Dict[Suite, Callable[[np.random.Generator, SuiteResult], None]] = {
            Suite.CLASSICAL: self._classical,
            Suite.TROPICAL: self._tropical,
            Suite.SEMICONJ: self._semiconj,
            Suite.TORUS: self._torus,
            Suite.FAREY: self._farey,
        }

    def run(self, suite: Suite) -> List[SuiteResult]:
        results = []
        for name in Suite.expand(suite):
            result = SuiteResult(name)
            self._suites[name](make_rng(self.config.seed), result)
            results.append(result)
        return results

    @staticmethod
    def report(results: List[SuiteResult], seed: int) -> Dict[str, Any]:
        return {
            "seed": seed,
            "passed": all(r.passed for r in results),
            "suites": {r.suite.value: r.to_json() for r in results},
        }

    # --- Suites ---

    def _classical(self, rng: np.random.Generator, result: SuiteResult) -> None:
        """Tree closure, Vieta moves, Fibonacci growth and the Cayley parametrization."""
        samples = self.config.samples
        if samples == 0:
            return
        words = random_path_words(
            rng, max(1, samples // 50), min(self.config.word_len, MAX_MARKOV_DEPTH)
        )
        for w in words:
            for t in markov_path(w):
                result.check(is_markov(t), f"markov_path({w}) left the equation at {t.as_tuple()}")
            last = markov_path(w)[-1]
            result.check(markov_integral(last) == 3, f"integral of {last.as_tuple()} is not 3")
            for slot in (1, 2, 3):
                moved = vieta_markov(last, slot)
                result.check(vieta_markov(moved, slot) == last, f"vieta slot {slot} is not an involution")
                result.check(vieta_ratio(last, slot) == moved, f"vieta forms disagree at slot {slot}")
            for e in euclid_path(w):
                result.check(e.is_valid(), f"euclid_path({w}) produced {e.as_tuple()}")

        numbers = markov_numbers(5)
        result.check(numbers[: len(KNOWN_MARKOV_NUMBERS)] == KNOWN_MARKOV_NUMBERS, "depth-5 Markov numbers")

        fib = [0, 1]
        while len(fib) < 40:
            fib.append(fib[-1] + fib[-2])
        for n, e in enumerate(euclid_path(PathWord.alternating(30))):
            result.check(e.largest == fib[n + 3], f"alternating Euclid maximum at n={n}")

        grid = np.linspace(0.0, 2.0 * math.pi, 100, endpoint=False)
        worst = max(abs(gram_det(cos_param(a, b))) for a in grid for b in grid)
        result.check(worst <= 1e-9, f"gram determinant {worst} on the cosine sheet")
        result.details["words"] = len(words)
        result.details["max_gram_det"] = worst

    def _tropical(self, rng: np.random.Generator, result: SuiteResult) -> None:
        """Involutions and exact invariance of Phi and Psi."""
        samples = self.config.samples
        if samples == 0:
            return
        for p in random_trop_points(rng, samples):
            label = str(tuple(format_scalar(e) for e in p.as_tuple()))
            s = sigma(p)
            r = rho(p)
            result.check(sigma(s) == p, f"sigma^2 != id at {label}")
            result.check(rho(rho(r)) == p, f"rho^3 != id at {label}")
            result.check(psi(s) == psi(p), f"psi(sigma p) != psi(p) at {label}")
            result.check(psi(r) == psi(p), f"psi(rho p) != psi(p) at {label}")
            step = trop_markov_step(p)
            result.check(trop_markov_step(step) == p, f"tropical Vieta step is not an involution at {label}")
            result.check(phi(step) == phi(p), f"phi not invariant at {label}")
            result.check(f(p.u, p.v) == f_closed(p.u, p.v), f"f forms disagree at {label}")

        for p in random_surface_points(rng, max(1, samples // 10)):
            s = sigma(p)
            result.check(on_surface(s) and on_surface(rho(p)), "generators leave the surface")
            if p.w != f(p.u, p.v):
                result.check(project_uv(s).branch == -project_uv(p).branch, "sigma keeps the sheet")

        for v in vertices():
            result.check(on_surface(v), f"vertex {v.as_tuple()} off the surface")
        result.details["points"] = samples

    def _semiconj(self, rng: np.random.Generator, result: SuiteResult) -> None:
        """fold(M_w t) == apply_word(fold(t), w), exactly."""
        words = random_generator_words(rng, self.config.words, self.config.word_len)
        points = random_torus_points(rng, self.config.points)
        worst: Fraction = Fraction(0)
        for w in words:
            residual = semiconj_residual(w, points)
            worst = max(worst, residual)
            result.check(residual == 0, f"residual {residual} for word '{w}'")
        result.details.update(
            words=len(words),
            points=len(points),
            word_len=self.config.word_len,
            max_residual=format_scalar(worst),
        )

    def _torus(self, rng: np.random.Generator, result: SuiteResult) -> None:
        """Fold/unfold consistency, well-definedness of the induced map, rational periods."""
        samples = self.config.samples
        if samples == 0:
            return
        matrices = random_hyperbolic_matrices(rng, self.config.matrices)
        for p in random_surface_points(rng, samples):
            preimages = unfold(p)
            for t in preimages:
                result.check(fold(t) == p, "fold(unfold(p)) != p")
            for M in matrices:
                images = {fold(torus_act(M, t)) for t in preimages}
                result.check(images == {induced_map(M, p)}, f"induced map of {M.to_json()} depends on the preimage")

        for t in random_torus_points(rng, max(1, samples // 10)):
            result.check(fold(-t) == fold(t), "fold is not even")

        longest = 0
        for q in range(1, 9):
            for i in range(-q, q):
                for j in range(-q, q):
                    start = TorusPoint.exact(Fraction(i, q), Fraction(j, q))
                    period = period_detect(CAT_MAP, start)
                    longest = max(longest, period)
                    result.check(period <= (2 * q) ** 2, "period above (2q)^2")
        half = TorusPoint.exact(Fraction(1, 2), Fraction(1, 2))
        result.check(period_detect(CAT_MAP, half) == 3, "cat map period of (1/2, 1/2)")
        result.details.update(points=samples, matrices=len(matrices), longest_period=longest)

    def _farey(self, rng: np.random.Generator, result: SuiteResult) -> None:
        """Path matrices against Farey parents, reciprocal symmetry, golden exponent."""
        samples = self.config.samples
        if samples == 0:
            return
        for w in random_path_words(rng, max(1, samples // 50), self.config.word_len):
            M = path_matrix(w)
            upper, lower = farey_parents(w)
            result.check(M.det == 1 and min(M.a, M.b, M.c, M.d) >= 0, f"path matrix of {w} not in SL2(N)")
            result.check(
                ((M.a, M.c), (M.b, M.d)) == ((upper.p, upper.q), (lower.p, lower.q)),
                f"columns of the path matrix of {w} are not its Farey parents",
            )

        swap = str.maketrans("LR", "RL")
        for _ in range(max(1, samples // 50)):
            digits = tuple(int(a) for a in rng.integers(1, 6, size=3))
            period = tuple(int(a) for a in rng.integers(1, 6, size=2))
            cf = ContinuedFraction(digits, period)
            word = str(cf_to_word(cf, 40))
            result.check(
                str(cf_to_word(reciprocal_cf(cf), 40)) == word.translate(swap),
                f"path of 1/xi is not the mirror of the path of {cf}",
            )

        golden = ContinuedFraction.parse("[1;(1)]")
        series = lambda_via_matrices(golden, 40)
        for k in range(2, 41, 2):
            result.check(abs(series.at(k) - LN_PHI) <= 1e-12, f"matrix estimator at k={k}")
        euclid = lambda_via_euclid(cf_to_word(golden, 200), 200).at(200)
        result.check(abs(euclid - LN_PHI) / LN_PHI < 0.01, f"Euclid estimator {euclid} at n=200")
        result.details["euclid_at_200"] = euclid
