from enum import Enum

__all__ = ['DataFormat']


class DataFormat(str, Enum):
    JSON = 'json'
    SERIES = 'ipa'
    MATRIX = 'ipm'
    CSV = 'csv'
