#include "aastar/rng.hpp"

namespace aastar {

std::uint64_t split_seed(std::uint64_t root, std::string_view tag, std::uint64_t index) {
    std::uint64_t h = mix64(root);
    for (unsigned char c : tag)
        h = mix64(h ^ static_cast<std::uint64_t>(c));
    return mix64(h ^ index);
}

} // namespace aastar
