"""Exception hierarchy shared by all humorkit modules."""


class HumorkitError(Exception):
    """Base class for every error raised by this package."""


# --- corpus ---

class IoFailure(HumorkitError):
    pass


class MalformedRecord(HumorkitError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class DuplicateId(HumorkitError):
    def __init__(self, tweet_id, line_no):
        super().__init__(f"duplicate tweet id {tweet_id!r} on line {line_no}")
        self.tweet_id = tweet_id
        self.line_no = line_no


class UnknownTweetId(HumorkitError):
    def __init__(self, tweet_id):
        super().__init__(f"annotation references unknown tweet id {tweet_id!r}")
        self.tweet_id = tweet_id


class NoEligibleItems(HumorkitError):
    pass


class InvalidRaterCount(HumorkitError):
    pass


class DoubtfulPresent(HumorkitError):
    pass


class DegenerateClassWarning(UserWarning):
    """A label class too small to stratify; its items all go to train."""


# --- features ---

class MissingDictionary(HumorkitError):
    def __init__(self, path):
        super().__init__(f"dictionary file not found: {path}")
        self.path = path


class UntrainedModel(HumorkitError):
    pass


# --- ml ---

class EmptyDataset(HumorkitError):
    pass


class EmptyCorpus(HumorkitError):
    pass


class NegativeFeatureValue(HumorkitError):
    def __init__(self, feature_name):
        super().__init__(f"multinomial NB requires non-negative values, got negative in {feature_name!r}")
        self.feature_name = feature_name


class ClassTooSmall(HumorkitError):
    def __init__(self, label):
        super().__init__(f"class {label} has fewer than 2 training samples")
        self.label = label


class KTooLarge(HumorkitError):
    pass


class InvalidHyperparameter(HumorkitError):
    pass


class VersionMismatch(HumorkitError):
    pass


class CorruptModel(HumorkitError):
    pass


# --- eval ---

class LengthMismatch(HumorkitError):
    pass


class EmptyInput(HumorkitError):
    pass


# --- service ---

class MalformedVote(HumorkitError):
    pass


class Exhausted(HumorkitError):
    """Session has already been served every tweet in the pool."""


# --- cli ---

class ConfigError(HumorkitError):
    pass
