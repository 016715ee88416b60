from ipa_engine.artifact_store.enums import *  # noqa
from ipa_engine.artifact_store.errors import *  # noqa
