#ifndef QWAVE_CHECKPOINT_HPP
#define QWAVE_CHECKPOINT_HPP

#include "qwave/particle_system.hpp"
#include "qwave/rng.hpp"

#include <filesystem>
#include <optional>

namespace qwave {

// Particle-run snapshot: state plus the generator at its exact stream
// position, so a resumed run reproduces the uninterrupted event sequence.
struct Checkpoint {
    ParticleState state;
    Rng rng;
};

// Versioned text format with a magic header and a trailing checksum.
// Doubles are stored as raw bit patterns, so the roundtrip is bit-exact.
void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace qwave

#endif
