#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <vector>

#include "casmc/errors.hpp"

namespace casmc {

using PointId = std::uint32_t;

// Dense set of point ids over a fixed carrier [0, universe).
// The carrier size is part of the value; mixing sets over different
// carriers is a DomainError.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t universe) : bits_(universe) {}

    static PointSet full(std::size_t universe) {
        PointSet s(universe);
        s.bits_.set();
        return s;
    }

    std::size_t universe() const { return bits_.size(); }
    std::size_t count() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }

    bool contains(PointId p) const { return p < bits_.size() && bits_.test(p); }

    void add(PointId p) {
        check_point(p);
        bits_.set(p);
    }
    void remove(PointId p) {
        check_point(p);
        bits_.reset(p);
    }

    PointSet& operator|=(const PointSet& o) {
        check_same(o);
        bits_ |= o.bits_;
        return *this;
    }
    PointSet& operator&=(const PointSet& o) {
        check_same(o);
        bits_ &= o.bits_;
        return *this;
    }
    PointSet& operator-=(const PointSet& o) {
        check_same(o);
        bits_ -= o.bits_;
        return *this;
    }

    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
    friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

    PointSet complement() const {
        PointSet s(*this);
        s.bits_.flip();
        return s;
    }

    bool is_subset_of(const PointSet& o) const {
        check_same(o);
        return bits_.is_subset_of(o.bits_);
    }

    bool intersects(const PointSet& o) const {
        check_same(o);
        return bits_.intersects(o.bits_);
    }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const PointSet& a, const PointSet& b) { return a.bits_ != b.bits_; }

    // Sorted member ids.
    std::vector<PointId> ids() const {
        std::vector<PointId> out;
        out.reserve(count());
        for_each([&](PointId p) { out.push_back(p); });
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (auto p = bits_.find_first(); p != boost::dynamic_bitset<>::npos; p = bits_.find_next(p))
            f(static_cast<PointId>(p));
    }

private:
    void check_point(PointId p) const {
        if (p >= bits_.size())
            throw DomainError("point id " + std::to_string(p) + " outside carrier of size " +
                              std::to_string(bits_.size()));
    }
    void check_same(const PointSet& o) const {
        if (bits_.size() != o.bits_.size())
            throw DomainError("point sets over different carriers (" + std::to_string(bits_.size()) +
                              " vs " + std::to_string(o.bits_.size()) + ")");
    }

    boost::dynamic_bitset<> bits_;
};

}  // namespace casmc
