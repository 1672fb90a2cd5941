from enum import Enum


class ModelName(str, Enum):
    """
    Enum representing the model families of the lab.

    Attributes:
        SEQ_DEPS (str): Sequence of dependencies.
        TWO_ISLANDS (str): Full two islands model.
        TWO_ISLANDS_SIMPLIFIED (str): Reduced two islands model with instantly mixing islands.
        TWO_ISLANDS_MODIFIED (str): Full two islands model with bridge mass 0.1.
        PYRAMID (str): Discrete pyramid.
        MEMORIZE_REPEAT (str): One memorize-and-repeat cycle.
        SOFT_DEPS (str): Soft dependencies.
    """

    SEQ_DEPS = "seq-deps"
    TWO_ISLANDS = "two-islands"
    TWO_ISLANDS_SIMPLIFIED = "two-islands-simplified"
    TWO_ISLANDS_MODIFIED = "two-islands-modified"
    PYRAMID = "pyramid"
    MEMORIZE_REPEAT = "memorize-repeat"
    SOFT_DEPS = "soft-deps"


class ScanKind(str, Enum):
    """
    Enum representing scan orders.

    Attributes:
        RANDOM (str): Variable drawn uniformly at every step.
        SYSTEMATIC (str): Variables visited in a fixed permutation.
    """

    RANDOM = "random"
    SYSTEMATIC = "systematic"


class ChainSpace(str, Enum):
    """
    Enum representing the space a process steps on.

    Attributes:
        STATES (str): The model's support Ω.
        AUGMENTED (str): The augmented space Ψ = Ω × [n].
    """

    STATES = "states"
    AUGMENTED = "augmented"


class BridgeMode(str, Enum):
    """
    Enum representing how much mass the bridge state carries.

    Attributes:
        NEGLIGIBLE (str): Every sampled variable moves the chain off the bridge.
        NORMAL (str): Every sampled variable moves the chain off the bridge with probability 1/2.
    """

    NEGLIGIBLE = "negligible"
    NORMAL = "normal"


class Island(str, Enum):
    X = "x"
    Y = "y"


class NamedPermutation(str, Enum):
    """
    Enum representing the permutations the lab knows by name.

    Attributes:
        BEST (str): Fastest scan of the model family.
        WORST (str): Slowest scan of the model family.
        IDENTITY (str): 1, 2, ..., n.
        REVERSE (str): n, n-1, ..., 1.
        ALTERNATING (str): x_1, y_1, x_2, y_2, ... (two islands only).
        BLOCKED (str): x_1, ..., x_n, y_1, ..., y_n (two islands only).
    """

    BEST = "best"
    WORST = "worst"
    IDENTITY = "identity"
    REVERSE = "reverse"
    ALTERNATING = "alternating"
    BLOCKED = "blocked"


class ExperimentId(str, Enum):
    FIG3A = "fig3a"
    FIG3B = "fig3b"
    FIG3C = "fig3c"
    TABLE1 = "table1-asymptotics"
    VERIFY_LEMMA1 = "verify-lemma1"
    VERIFY_THEOREM1 = "verify-theorem1"
    VERIFY_THEOREM2 = "verify-theorem2"


class VerifyTarget(str, Enum):
    LEMMA1 = "lemma1"
    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"
    ALL = "all"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
