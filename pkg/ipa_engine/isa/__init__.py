from ipa_engine.isa.dependence import *  # noqa
from ipa_engine.isa.enums import *  # noqa
from ipa_engine.isa.errors import *  # noqa
from ipa_engine.isa.ica import *  # noqa
from ipa_engine.isa.ncut import *  # noqa
from ipa_engine.isa.objective import *  # noqa
from ipa_engine.isa.partition import *  # noqa
from ipa_engine.isa.pca import *  # noqa
from ipa_engine.isa.rules import *  # noqa
