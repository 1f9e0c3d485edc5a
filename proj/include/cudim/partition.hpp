#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace cudim {

// Weakly decreasing sequence of positive integers; the isomorphism type of a
// finite abelian p-group as the exponents of its cyclic summands. Empty
// partition = trivial group.
class Partition {
public:
    Partition() = default;

    // Sorts descending and drops zeros.
    explicit Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    const std::vector<std::uint32_t>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t count() const { return parts_.size(); }

    std::uint64_t weight() const {
        return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
    }

    std::uint32_t largest() const { return parts_.empty() ? 0 : parts_.front(); }

    // Transpose of the Young diagram.
    Partition conjugate() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 1; i <= largest(); ++i) {
            std::uint32_t count = 0;
            for (auto p : parts_)
                if (p >= i) ++count;
            out.push_back(count);
        }
        return Partition(std::move(out));
    }

    // Diagram containment: mu fits inside *this componentwise (padding the
    // shorter with zeros).
    bool contains(const Partition& mu) const {
        if (mu.parts_.size() > parts_.size()) return false;
        for (std::size_t i = 0; i < mu.parts_.size(); ++i)
            if (mu.parts_[i] > parts_[i]) return false;
        return true;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        std::size_t n = std::min(a.parts_.size(), b.parts_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (auto c = a.parts_[i] <=> b.parts_[i]; c != 0) return c;
        return a.parts_.size() <=> b.parts_.size();
    }

private:
    std::vector<std::uint32_t> parts_;
};

// All partitions mu contained in lambda's diagram (including the empty one
// and lambda itself), each exactly once.
inline std::vector<Partition> subpartitions(const Partition& lambda) {
    std::vector<Partition> out;
    std::vector<std::uint32_t> current;
    auto rec = [&](auto&& self, std::size_t index, std::uint32_t bound) -> void {
        out.push_back(Partition(current));
        if (index == lambda.parts().size()) return;
        std::uint32_t top = std::min(bound, lambda.parts()[index]);
        for (std::uint32_t v = top; v >= 1; --v) {
            current.push_back(v);
            self(self, index + 1, v);
            current.pop_back();
        }
    };
    rec(rec, 0, lambda.largest());
    return out;
}

// All partitions of weight exactly n, descending lexicographic.
inline std::vector<Partition> partitions_of(std::uint32_t n) {
    std::vector<Partition> out;
    std::vector<std::uint32_t> current;
    auto rec = [&](auto&& self, std::uint32_t remaining, std::uint32_t bound) -> void {
        if (remaining == 0) {
            out.push_back(Partition(current));
            return;
        }
        for (std::uint32_t v = std::min(bound, remaining); v >= 1; --v) {
            current.push_back(v);
            self(self, remaining - v, v);
            current.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);
    return out;
}

// All partitions of weight 0..max_weight, ordered by weight then descending
// lexicographic within a weight.
inline std::vector<Partition> partitions_up_to(std::uint32_t max_weight) {
    std::vector<Partition> out;
    for (std::uint32_t w = 0; w <= max_weight; ++w) {
        auto layer = partitions_of(w);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace cudim
