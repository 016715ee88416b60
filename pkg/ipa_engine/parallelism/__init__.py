from ipa_engine.parallelism.threads import *  # noqa
