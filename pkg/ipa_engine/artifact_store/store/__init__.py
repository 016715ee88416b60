from ipa_engine.artifact_store.store.base import *  # noqa
from ipa_engine.artifact_store.store.filesystem import *  # noqa
from ipa_engine.artifact_store.store.no_op import *  # noqa
