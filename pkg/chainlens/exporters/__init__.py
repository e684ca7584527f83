"""Analysis exporters; every module here is loaded by ``ChainLens.load_exporters``."""
