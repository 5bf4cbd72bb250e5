"""Exception types raised by constructors and verifiers.

Every error carries an optional ``witness`` (a dict of named indices) and a
``condition`` string naming the axiom that broke, which the CLI prints.
"""

from __future__ import annotations


class AlgebraError(Exception):
    condition = "algebraic condition"

    def __init__(self, message: str = "", witness: dict | None = None, condition: str | None = None):
        if condition is not None:
            self.condition = condition
        self.witness = witness
        text = message or self.condition
        if witness is not None:
            text = f"{text} (witness {witness})"
        super().__init__(text)


class InputError(AlgebraError):
    condition = "malformed input"


class ShapeMismatch(InputError):
    condition = "table shape"


# groups and braces
class NotAssociative(AlgebraError):
    condition = "associativity"


class NoIdentity(AlgebraError):
    condition = "two-sided identity"


class NoInverse(AlgebraError):
    condition = "two-sided inverses"


class NotBijectiveRow(AlgebraError):
    condition = "Latin-square rows/columns"


class IdentityMismatch(AlgebraError):
    condition = "additive and multiplicative identities coincide"


class DistributivityFails(AlgebraError):
    condition = "skew brace law a∘(b+c) = a∘b − a + a∘c"


class NotInvolutive(AlgebraError):
    condition = "μ is an involution of the parameter set"


class NotClosedUnderInverse(AlgebraError):
    condition = "parameter set closed under ∘-inverse"


class YNotClosed(AlgebraError):
    condition = "parameter set is a ∘-subgroup"


# p-shelves
class SelfDistributivityFails(AlgebraError):
    condition = "generalized left p-self-distributivity"


class CondFails(AlgebraError):
    condition = "α-compatibility α_ih(a)▷α_jh(b) = α_jh(α_ij(a)▷b)"


class BetaNonCommuting(AlgebraError):
    condition = "β_ik β_jk = β_jk β_ik"


class ParamSetOutsideDistributor(AlgebraError):
    condition = "parameters lie in the right distributor"


class ParamSetOutsideCenter(AlgebraError):
    condition = "parameters lie in the additive center"


class ParamsNotCommuting(AlgebraError):
    condition = "parameters commute under ∘"


class HypothesesNotMet(AlgebraError):
    condition = "construction hypotheses"


# solutions, twists, reflections
class YBEFails(AlgebraError):
    condition = "parametric Yang-Baxter equation"


class NotLeftNonDegenerate(AlgebraError):
    condition = "left non-degeneracy (σ_a bijective)"


class NotBijective(AlgebraError):
    condition = "bijectivity"


class NotAdmissible(AlgebraError):
    condition = "admissible twist conditions (1)-(2)"


class StructureGroupFails(AlgebraError):
    condition = "structure-group relation a∘b = σ_a(b)∘τ_b(a)"


class ReflectionFails(AlgebraError):
    condition = "parametric reflection equation"


class KNotReflection(ReflectionFails):
    pass


class ConditionFails(AlgebraError):
    condition = "reflection construction condition"


class BaseNotReflection(AlgebraError):
    condition = "base shelf reflection conditions"


class CommutationFails(AlgebraError):
    condition = "κ α_ij = α_ij κ"


class CompAlphaFails(AlgebraError):
    condition = "α_ij = α_hj α_ih"


class Basic0Fails(AlgebraError):
    condition = "twist transport κ^j σ^{j̄i}_a = σ^{ji}_a κ^j"


# p-braces and operators
class AxiomFails(AlgebraError):
    condition = "structure axiom"


class IllDefined(AlgebraError):
    condition = "map forced to two different values"


class NotSurjective(AlgebraError):
    condition = "magma slot not surjective"


# rational maps
class Pole(AlgebraError):
    condition = "vanishing denominator"


# search
class BudgetExceeded(AlgebraError):
    condition = "enumeration budget"


class InternalInconsistency(AssertionError):
    """A proven implication failed on a concrete instance; indicates a library bug."""
