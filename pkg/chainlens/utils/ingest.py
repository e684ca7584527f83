"""
Block-file ingestion with optional process-level parallelism.

Files are parsed independently, one per worker, and the results are merged
back in file order so the outcome never depends on the worker count.
"""

import logging
from multiprocessing import Pool
from pathlib import Path
from typing import Sequence

from chainlens.errors import WireError
from chainlens.wire import BlockRecord, list_block_files, scan_path

logger = logging.getLogger(__name__)


def _scan(file_index: int, path: Path) -> list[BlockRecord]:
    return scan_path(path, file_index)


def resolve_inputs(inputs: Sequence[Path]) -> list[Path]:
    """
    Expand input files and directories into one ordered list of block files.

    Raises:
        WireError: If no block file is found
    """
    files: list[Path] = []
    for path in inputs:
        files.extend(list_block_files(Path(path)))
    if not files:
        joined = ", ".join(str(p) for p in inputs)
        raise WireError(f"no block files found in {joined}")
    return files


def parse_files(paths: Sequence[Path], workers: int = 1) -> list[BlockRecord]:
    """
    Parse block files into records, in file order.

    Args:
        paths: Block files; position in the list becomes the file index
        workers: Number of worker processes; 1 parses in-process

    Raises:
        CorruptFile: From the first damaged file
    """
    jobs = list(enumerate(paths))
    if workers <= 1 or len(jobs) <= 1:
        per_file = [_scan(index, path) for index, path in jobs]
    else:
        logger.info(f"Parsing {len(jobs)} files with {workers} workers")
        with Pool(processes=min(workers, len(jobs))) as pool:
            per_file = pool.starmap(_scan, jobs)

    records = [block for blocks in per_file for block in blocks]
    logger.info(f"Parsed {len(records)} blocks from {len(jobs)} files")
    return records
