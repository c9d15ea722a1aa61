#include "qwave/checkpoint.hpp"

#include "qwave/errors.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace qwave {

namespace {

constexpr const char* kMagic = "QWCK";
constexpr int kVersion = 1;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }
double from_bits(std::uint64_t b) { return std::bit_cast<double>(b); }

} // namespace

void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path) {
    std::ostringstream body;
    body << "version " << kVersion << "\n";
    body << "algorithm " << Rng::algorithm_id << "\n";
    body << "clock " << bits(ck.state.clock()) << "\n";
    body << "n " << ck.state.size() << "\n";
    body << "positions";
    for (double x : ck.state.positions()) body << " " << bits(x);
    body << "\n";
    body << "rng " << ck.rng.save_state() << "\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw CheckpointError("cannot open for writing: " + path.string());
    out << kMagic << "\n" << body.str() << "checksum " << fnv1a(body.str()) << "\n";
    if (!out) throw CheckpointError("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path.string());

    std::string magic;
    if (!std::getline(in, magic) || magic != kMagic)
        throw CheckpointError("bad magic in " + path.string());

    // Everything between the magic line and the checksum line is the body.
    std::ostringstream body;
    std::string line, checksum_line;
    while (std::getline(in, line)) {
        if (line.rfind("checksum ", 0) == 0) {
            checksum_line = line;
            break;
        }
        body << line << "\n";
    }
    if (checksum_line.empty())
        throw CheckpointError("missing checksum in " + path.string());

    std::uint64_t want = 0;
    {
        std::istringstream cs(checksum_line.substr(9));
        if (!(cs >> want)) throw CheckpointError("bad checksum line in " + path.string());
    }
    if (fnv1a(body.str()) != want)
        throw CheckpointError("checksum mismatch in " + path.string());

    std::istringstream bs(body.str());
    std::string key;
    int version = -1;
    std::string algorithm;
    double clock = 0.0;
    int n = 0;
    std::vector<double> positions;
    std::string rng_state;

    while (bs >> key) {
        if (key == "version") {
            bs >> version;
        } else if (key == "algorithm") {
            bs >> algorithm;
        } else if (key == "clock") {
            std::uint64_t b;
            bs >> b;
            clock = from_bits(b);
        } else if (key == "n") {
            bs >> n;
        } else if (key == "positions") {
            positions.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                std::uint64_t b;
                if (!(bs >> b)) throw CheckpointError("truncated positions in " + path.string());
                positions.push_back(from_bits(b));
            }
        } else if (key == "rng") {
            std::getline(bs, rng_state);
            if (!rng_state.empty() && rng_state.front() == ' ')
                rng_state.erase(rng_state.begin());
        } else {
            throw CheckpointError("unknown field '" + key + "' in " + path.string());
        }
    }

    if (version != kVersion)
        throw CheckpointError("version mismatch in " + path.string() + ": have " +
                              std::to_string(version) + ", expected " +
                              std::to_string(kVersion));
    if (algorithm != Rng::algorithm_id)
        throw CheckpointError("generator mismatch in " + path.string());
    if (n <= 0 || static_cast<int>(positions.size()) != n)
        throw CheckpointError("inconsistent state in " + path.string());

    Checkpoint ck{ParticleState::restore(std::move(positions), clock), Rng(0)};
    ck.rng.load_state(rng_state);
    return ck;
}

} // namespace qwave
