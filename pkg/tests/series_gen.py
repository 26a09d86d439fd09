"""Random truncated series for the lambda-ring property checks."""
import random

from quivercount.arith import QPoly, RatFunc
from quivercount.quiver import dim_vectors_below
from quivercount.series import TruncatedSeries

_DENS = [QPoly((1,)), QPoly((-1, 1)), QPoly((1, 1)), QPoly((-1, 0, 1))]


def random_coeff(rng: random.Random) -> RatFunc:
    num = QPoly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
    return RatFunc(num, rng.choice(_DENS))


def random_series(rng: random.Random, box, density: float = 0.5, constant=0) -> TruncatedSeries:
    coeffs = {}
    for alpha in dim_vectors_below(box):
        if not any(alpha):
            continue
        if rng.random() < density:
            coeffs[alpha] = random_coeff(rng)
    coeffs[(0,) * len(box)] = constant
    return TruncatedSeries(box, coeffs)
