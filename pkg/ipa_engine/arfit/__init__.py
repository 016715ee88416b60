from ipa_engine.arfit.enums import *  # noqa
from ipa_engine.arfit.errors import *  # noqa
from ipa_engine.arfit.fit import *  # noqa
from ipa_engine.arfit.rules import *  # noqa
