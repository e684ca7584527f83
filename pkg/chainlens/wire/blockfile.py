"""
Block-file scanning.

A block file is a concatenation of framed blocks, possibly followed by
zero padding. Files are independent, so each can be scanned by its own
worker.
"""

import logging
from pathlib import Path
from typing import Iterator

from chainlens.errors import CorruptFile, WireError
from chainlens.wire.codec import FRAME_SIZE, parse_block
from chainlens.wire.records import BlockRecord

logger = logging.getLogger(__name__)


def scan_file(data: bytes, file_index: int = 0) -> Iterator[BlockRecord]:
    """
    Yield every block of a block file in file order.

    Args:
        data: Full contents of the file
        file_index: Index recorded on each block as provenance

    Raises:
        CorruptFile: On damage part way through, carrying the offset where
            the last good block ended
    """
    offset = 0
    size = len(data)
    while offset < size:
        if not any(data[offset : offset + 4]):
            # Zero padding ends the file
            logger.debug(f"Zero padding at offset {offset} of file {file_index}")
            return
        try:
            block = parse_block(data, file_index, offset)
        except WireError as e:
            raise CorruptFile(str(e), offset=offset, file_index=file_index) from e
        yield block
        offset += FRAME_SIZE + block.size


def scan_path(path: Path, file_index: int = 0) -> list[BlockRecord]:
    """Read and scan one block file from disk."""
    data = path.read_bytes()
    blocks = list(scan_file(data, file_index))
    logger.info(f"Scanned {path.name}: {len(blocks)} blocks, {len(data)} bytes")
    return blocks


def list_block_files(path: Path) -> list[Path]:
    """
    Resolve an input path into the ordered list of block files.

    A file is returned as-is; a directory yields its ``blk*.dat`` files, or
    any ``*.dat`` files when none follow that naming, sorted by name.
    """
    if path.is_file():
        return [path]
    if not path.is_dir():
        return []
    files = sorted(path.glob("blk*.dat")) or sorted(path.glob("*.dat"))
    return [f for f in files if f.is_file()]
