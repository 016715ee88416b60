from ipa_engine.evaluation.enums import *  # noqa
from ipa_engine.evaluation.errors import *  # noqa
from ipa_engine.evaluation.hinton import *  # noqa
from ipa_engine.evaluation.layouts import *  # noqa
from ipa_engine.evaluation.transform import *  # noqa
