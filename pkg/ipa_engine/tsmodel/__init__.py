from ipa_engine.tsmodel.differencing import *  # noqa
from ipa_engine.tsmodel.enums import *  # noqa
from ipa_engine.tsmodel.errors import *  # noqa
from ipa_engine.tsmodel.polynomial import *  # noqa
from ipa_engine.tsmodel.series import *  # noqa
