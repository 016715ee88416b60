from ipa_engine.errors import ArtifactIOError

__all__ = [
    'ArtifactAlreadyExists',
    'ArtifactDoesNotExist',
    'ArtifactStoreError',
    'BundleFormatError',
    'CorruptArtifactError',
    'SerializerInitializationError',
]


class ArtifactStoreError(ArtifactIOError):
    pass


class ArtifactDoesNotExist(ArtifactStoreError):
    pass


class ArtifactAlreadyExists(ArtifactStoreError):
    pass


class CorruptArtifactError(ArtifactStoreError):
    pass


class SerializerInitializationError(ArtifactStoreError):
    pass


class BundleFormatError(ArtifactStoreError):
    pass
