class ContractViolation(ValueError):
    """An input outside an operation's stated domain (wrong chromatic number,
    unmet hypothesis, size vector that does not fit, ...)."""


class Contradiction(RuntimeError):
    """The linear program and the exhaustive oracle disagree."""


class HypothesisFailure(ContractViolation):
    """A construction refused because one of its hypotheses does not hold."""

    def __init__(self, hypothesis: str):
        super().__init__(hypothesis)
        self.hypothesis = hypothesis
