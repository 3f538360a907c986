"""Exception types shared across the package."""


class ConcaveSkewError(Exception):
    """Base class for all library errors."""


class DomainEscape(ConcaveSkewError):
    """A word composition left the domain of the next map.

    `step` is the 0-based index of the symbol whose domain was violated.
    """

    def __init__(self, step, value, word=None):
        self.step = step
        self.value = value
        self.word = word
        msg = f"domain escape at step {step} (value {value!r})"
        if word is not None:
            msg += f" in word {word!r}"
        super().__init__(msg)


class EmptyInterval(ConcaveSkewError):
    """The word admits no points: its admissibility interval is empty."""


class ResourceLimit(ConcaveSkewError):
    """A configured node/iteration budget was exhausted."""


class NonTerminating(ConcaveSkewError):
    """An iteration failed to reach its stopping condition within the cap."""


class NotParabolic(ConcaveSkewError):
    """Operation requires a word whose cycle map has a parabolic fixed point."""


class NoFixedPoint(ConcaveSkewError):
    """The composed map has no fixed point (e.g. connector block too short)."""


class DegenerateDenominator(ConcaveSkewError):
    """Distortion ratio requested for a degenerate interval (y - x too small)."""


class NotHyperbolicPair(ConcaveSkewError):
    """Twin construction requires a hyperbolic pair of fixed points."""


class CouplingHypothesisViolated(ConcaveSkewError):
    """Monotone-coupling hypothesis fails: supports share no pointwise order."""


class NotDisjoint(ConcaveSkewError):
    """The two subshifts intersect, so the join construction does not apply."""


class ContainsZeroSequence(ConcaveSkewError):
    """A subshift argument contains the all-zeros sequence."""


class CrossingViolated(ConcaveSkewError):
    """A word fails the crossing requirement eval(word, a) > a."""


class NoContraction(ConcaveSkewError):
    """The padded word system is not uniformly contracting (retune eps/L)."""


class NoSignChange(ConcaveSkewError):
    """Bisection in the parameter found no sign change on the given bracket."""


class NoExitCase(ConcaveSkewError):
    """The base map matches none of the exit-bifurcation cases."""


class ConfigError(ConcaveSkewError):
    """Run configuration failed to parse or validate."""
