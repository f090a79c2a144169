#include "ssmax/configuration.hpp"

namespace ssmax {

std::string canonical_text(const Configuration& cfg) {
    std::string out;
    std::uint32_t i = 0;
    for (const auto& s : cfg) {
        if (i != 0) out += ';';
        out += std::to_string(i++);
        out += ':';
        out += s.parent ? std::to_string(s.parent->index) : "_";
        out += '/';
        out += format_fraction(s.level.value);
        out += '/';
        out += std::to_string(s.dist);
    }
    return out;
}

std::uint64_t digest(const Configuration& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_text(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace ssmax
