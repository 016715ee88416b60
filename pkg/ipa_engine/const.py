PRESETS_ANCHOR = 'ipa_engine'
PRESETS_DIR = 'presets'
SCHEMA_RESOURCE = 'schema.json'

SERIES_MAGIC = b'IPA1'
MATRIX_MAGIC = b'IPM1'

PIPELINE_FORMAT_TAG = 'ipa-pipeline/1'
DATASET_FORMAT_TAG = 'ipa-dataset/1'
MANIFEST_FORMAT_TAG = 'ipa-run/1'
