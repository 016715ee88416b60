import typing as t

from ipa_engine.arfit import IllConditionedError
from ipa_engine.artifact_store import ArtifactAlreadyExists
from ipa_engine.artifact_store import ArtifactDoesNotExist
from ipa_engine.artifact_store import BundleFormatError
from ipa_engine.evaluation import DimensionMismatchError
from ipa_engine.evaluation import NoGroundTruthError
from ipa_engine.isa import ConditioningError
from ipa_engine.isa import DegenerateCoordinateError
from ipa_engine.isa import DisconnectedGraphError
from ipa_engine.isa import IcaConvergenceError
from ipa_engine.synth import UndercompletenessError
from ipa_engine.tsmodel import InsufficientLengthError

__all__ = ['remediation_hint']

_HINTS: t.Tuple[t.Tuple[t.Type[BaseException], str], ...] = (
    (UndercompletenessError, 'make the system undercomplete: D_x > D_e when q > 0, and D_x >= D_s >= D_e'),
    (IllConditionedError, 'check the observations for constant or duplicated channels'),
    (InsufficientLengthError, 'provide a longer series or lower pipeline.max_ar_order'),
    (ConditioningError, 'keep fewer directions with pipeline.dim_rule, the covariance is rank deficient'),
    (IcaConvergenceError, 'raise pipeline.max_sweeps or loosen pipeline.tolerance'),
    (DegenerateCoordinateError, 'remove constant channels from the observations'),
    (DisconnectedGraphError, 'raise pipeline.cluster_rule.count or drop the cap of the eigengap rule'),
    (DimensionMismatchError, 'refit with pipeline.dim_rule {"kind": "fixed", "value": D_e}'),
    (NoGroundTruthError, 'evaluate against a dataset written by the simulate command'),
    (ArtifactAlreadyExists, 'pass --overwrite or choose another --out directory'),
    (ArtifactDoesNotExist, 'check the bundle path, it must be a directory written by this tool'),
    (BundleFormatError, 'the bundle was written by an incompatible version, regenerate it'),
)


def _chain(error: t.Optional[BaseException]) -> t.Iterator[BaseException]:
    seen = set()

    while error is not None and id(error) not in seen:
        seen.add(id(error))
        yield error
        error = getattr(error, 'cause', None) or error.__cause__


def remediation_hint(error: BaseException) -> t.Optional[str]:
    """
    Hint for the innermost known error: stage failures and config errors are followed down to their cause
    """

    for item in reversed(list(_chain(error))):
        for error_type, hint in _HINTS:
            if isinstance(item, error_type):
                return hint

    return None
