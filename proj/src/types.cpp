#include "sidonkit/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sidonkit/error.hpp"

namespace sidonkit {

ModSet::ModSet(std::uint64_t modulus, std::vector<std::uint64_t> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
    if (modulus_ == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] >= modulus_) {
            throw Error(ErrorKind::RangeError, "element " + std::to_string(elements_[i]) + " >= modulus " + std::to_string(modulus_));
        }
        if (i > 0 && elements_[i] == elements_[i - 1]) {
            throw Error(ErrorKind::InvalidArgument, "duplicate element " + std::to_string(elements_[i]));
        }
    }
}

ModSet ModSet::full(std::uint64_t modulus) {
    std::vector<std::uint64_t> all(modulus);
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    return ModSet(modulus, std::move(all));
}

bool ModSet::contains(std::uint64_t residue) const {
    return std::binary_search(elements_.begin(), elements_.end(), residue);
}

ModSet ModSet::reinterpret(std::uint64_t new_modulus) const {
    std::vector<std::uint64_t> out;
    out.reserve(elements_.size());
    for (auto e : elements_) out.push_back(e % new_modulus);
    return ModSet(new_modulus, std::move(out));
}

void SampleConfig::validate() const {
    if (!(gamma > Rational(0) && gamma < Rational(1))) {
        throw Error(ErrorKind::InvalidArgument, "gamma must lie in (0,1), got " + gamma.str());
    }
    if (residues.empty()) throw Error(ErrorKind::InvalidArgument, "residue set S must be nonempty");
    if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
}

IntSeq::IntSeq(std::vector<std::uint64_t> elements, std::uint64_t horizon, std::optional<SampleConfig> provenance)
    : elements_(std::move(elements)), horizon_(horizon), provenance_(std::move(provenance)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const auto x = elements_[i];
        if (x == 0) throw Error(ErrorKind::InvalidArgument, "sequence elements must be positive");
        if (i > 0 && x <= elements_[i - 1]) throw Error(ErrorKind::InvalidArgument, "sequence must be strictly increasing");
        if (x > horizon_) {
            throw Error(ErrorKind::RangeError, "element " + std::to_string(x) + " exceeds horizon " + std::to_string(horizon_));
        }
        if (provenance_) {
            if (x <= provenance_->m || !provenance_->residues.contains(x % provenance_->modulus())) {
                throw Error(ErrorKind::InvalidArgument, "element " + std::to_string(x) + " is not admissible under its provenance");
            }
        }
    }
}

bool IntSeq::contains(std::uint64_t x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

}  // namespace sidonkit
