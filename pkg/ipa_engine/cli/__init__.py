from ipa_engine.cli.commands import main

__all__ = ['main']
