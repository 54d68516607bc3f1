"""RngStream value object - a named, reproducible random stream."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

UINT64_MAX = 2**64 - 1

# Streams for independent purposes inside one experiment are spaced by 2**32
# so block indices never collide across purposes.
PURPOSE_STRIDE = 2**32


class RngStream(BaseModel):
    """Counter-based random stream identified by (master_seed, stream_id).

    The same pair always yields the same Philox generator state.
    """

    model_config = ConfigDict(frozen=True)

    master_seed: int = Field(..., ge=0, le=UINT64_MAX)
    stream_id: int = Field(0, ge=0, le=UINT64_MAX)

    def generator(self) -> np.random.Generator:
        """Build a fresh generator positioned at the start of this stream."""
        seed_sequence = np.random.SeedSequence([self.master_seed, self.stream_id])
        return np.random.Generator(np.random.Philox(seed_sequence))

    def substream(self, purpose: int, block: int = 0) -> "RngStream":
        """Derive the stream for a (purpose, block) pair under the same master seed."""
        return RngStream(
            master_seed=self.master_seed,
            stream_id=(self.stream_id + purpose * PURPOSE_STRIDE + block) % (UINT64_MAX + 1),
        )


RandomSource = RngStream | np.random.Generator


def as_generator(rng: RandomSource) -> np.random.Generator:
    """Accept either a stream (fresh generator) or a live generator (used as is)."""
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng
