from ipa_engine.synth.dynamics import *  # noqa
from ipa_engine.synth.enums import *  # noqa
from ipa_engine.synth.errors import *  # noqa
from ipa_engine.synth.simulate import *  # noqa
from ipa_engine.synth.sources import *  # noqa
from ipa_engine.synth.specs import *  # noqa
