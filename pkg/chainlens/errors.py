"""
Exception hierarchy shared by every chainlens module.

Library code raises these; only the command-line layer turns them into
exit codes.
"""


class ChainLensError(Exception):
    """Base class for all chainlens errors"""


class WireError(ChainLensError):
    """An exception class for raw block-file decoding errors"""


class TruncatedData(WireError):
    """Input ended before a complete field could be read"""


class BadMagic(WireError):
    """Block framing did not start with the network magic"""


class MalformedBlock(WireError):
    """A block decoded but violates a structural rule"""


class InvalidAddress(WireError):
    """A base58check string failed alphabet or checksum validation"""


class CorruptFile(WireError):
    """A block file is damaged part way through."""

    def __init__(self, message: str, offset: int, file_index: int = 0) -> None:
        super().__init__(f"{message} (file {file_index}, last good offset {offset})")
        self.message = message
        self.offset = offset
        self.file_index = file_index

    def __reduce__(self) -> tuple[type["CorruptFile"], tuple[str, int, int]]:
        return self.__class__, (self.message, self.offset, self.file_index)


class GraphError(ChainLensError):
    """An exception class for chain linkage errors"""


class DuplicateBlock(GraphError):
    """The same block hash was ingested twice"""


class ForkDetected(GraphError):
    """Two blocks share one parent"""


class OrphanBlock(GraphError):
    """A block's parent is missing from the ingested set"""


class BadHeight(GraphError):
    """A height outside the indexed chain was requested"""


class AnalysisError(ChainLensError):
    """An exception class for analysis input errors"""


class InsufficientData(AnalysisError):
    """Too few points for the requested fit"""


class ScenarioError(ChainLensError):
    """An exception class for synthetic scenario errors"""


class InvalidScenario(ScenarioError):
    """The scenario document is malformed or violates its invariants"""


class InfeasibleScenario(ScenarioError):
    """The scenario asks for funds or outputs that cannot exist"""


class UsageError(ChainLensError):
    """The command line asked for an analysis or option that does not exist"""
