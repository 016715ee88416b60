from ipa_engine.pipeline.chart import *  # noqa
from ipa_engine.pipeline.config import *  # noqa
from ipa_engine.pipeline.errors import *  # noqa
from ipa_engine.pipeline.marks import *  # noqa
from ipa_engine.pipeline.model import *  # noqa
from ipa_engine.pipeline.stage import *  # noqa
from ipa_engine.pipeline.stages import *  # noqa
