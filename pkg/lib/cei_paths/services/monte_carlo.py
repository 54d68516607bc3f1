"""
Monte Carlo service - block-parallel ensembles with reproducible streams

An ensemble of `total` draws is cut into fixed-size blocks. Block b of
purpose p always reads the stream substream(p, b), and results are joined in
block order, so the output depends only on the master seed and the block
size, never on the worker count.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from cei_paths.domain.rng_stream import RngStream

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 256

BlockResult = np.ndarray | tuple[np.ndarray, ...]
BlockDraw = Callable[[int, np.random.Generator], BlockResult]


def block_sizes(total: int, block_size: int) -> list[int]:
    """Sizes of the blocks covering `total` draws; only the last one may be short."""
    if total < 0:
        raise ValueError(f"total must be >= 0, got {total}")
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    full, rest = divmod(total, block_size)
    return [block_size] * full + ([rest] if rest else [])


def _join(results: list[BlockResult]) -> BlockResult:
    if isinstance(results[0], tuple):
        return tuple(np.concatenate(parts) for parts in zip(*results, strict=True))
    return np.concatenate(results)


def generate_ensemble(
    draw: BlockDraw,
    total: int,
    stream: RngStream,
    purpose: int,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> BlockResult:
    """Run draw(size, generator) over all blocks and concatenate in block order.

    Args:
        draw: Produces the results of one block; arrays (or tuples of arrays)
            whose first axis indexes draws
        total: Number of draws requested
        stream: Stream of the experiment
        purpose: Purpose code separating independent ensembles of one experiment
        block_size: Draws per block
        workers: Thread count (numpy releases the GIL in its heavy kernels)

    Returns:
        The concatenated block results
    """
    sizes = block_sizes(total, block_size)
    if not sizes:
        raise ValueError("an ensemble needs at least one draw")

    def run_block(block: int) -> BlockResult:
        generator = stream.substream(purpose, block).generator()
        return draw(sizes[block], generator)

    logger.debug(
        "ensemble purpose=%d: %d draws in %d blocks on %d workers",
        purpose,
        total,
        len(sizes),
        workers,
    )
    if workers <= 1:
        results = [run_block(block) for block in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_block, range(len(sizes))))
    return _join(results)
