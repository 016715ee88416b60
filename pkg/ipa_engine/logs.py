import logging

logger_series = logging.getLogger('ipa_engine.series')
logger_synth = logging.getLogger('ipa_engine.synth')
logger_arfit = logging.getLogger('ipa_engine.arfit')
logger_isa = logging.getLogger('ipa_engine.isa')
logger_pipeline = logging.getLogger('ipa_engine.pipeline')
logger_stages = logging.getLogger('ipa_engine.pipeline.stages')
logger_parallelism = logging.getLogger('ipa_engine.parallelism')
logger_artifact_store = logging.getLogger('ipa_engine.artifact_store')
logger_evaluation = logging.getLogger('ipa_engine.evaluation')
logger_cli = logging.getLogger('ipa_engine.cli')
