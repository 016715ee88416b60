import pytest

from ipa_engine.arfit import IllConditionedError
from ipa_engine.artifact_store.errors import ArtifactDoesNotExist
from ipa_engine.errors import ArtifactIOError
from ipa_engine.errors import ConfigError
from ipa_engine.errors import DataError
from ipa_engine.errors import NumericalError
from ipa_engine.errors import error_category
from ipa_engine.isa import DisconnectedGraphError
from ipa_engine.pipeline import StageError
from ipa_engine.synth import UndercompletenessError
from ipa_engine.tsmodel import InsufficientLengthError


@pytest.mark.parametrize(
    ('error', 'category'),
    [
        (UndercompletenessError('D_x'), ConfigError),
        (InsufficientLengthError('short'), DataError),
        (IllConditionedError('cond'), NumericalError),
        (ArtifactDoesNotExist('missing'), ArtifactIOError),
        (ValueError('other'), None),
    ],
)
def test_error_category(error: Exception, category: type) -> None:
    assert error_category(error) is category


def test_stage_error_is_categorized_by_its_cause() -> None:
    error = StageError('clustering', DisconnectedGraphError([[0, 1], [2]], 1))

    assert error_category(error) is DataError
