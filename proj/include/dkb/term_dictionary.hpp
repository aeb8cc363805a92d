// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dkb {

using TermId = std::uint32_t;

/// Slots a term can occupy in a statement. A term may hold several roles;
/// they are recorded as bits.
enum class Role : unsigned {
    LeftArg    = 1u << 0,
    Link       = 1u << 1,
    RightArg   = 1u << 2,
    Provenance = 1u << 3,
};

constexpr unsigned role_bit(Role r) { return static_cast<unsigned>(r); }

/// Bijective, append-only mapping between term strings and dense ids.
/// One shared namespace holds argument terms, link labels and provenance
/// (document) ids alike; the roles a term has been seen in are tracked
/// per id. Ids are stable once assigned.
class TermDictionary {
public:
    /// Returns the id for `term`, assigning the next free id on first sight,
    /// and records `role` for it.
    TermId intern(std::string_view term, Role role);

    std::optional<TermId> find(std::string_view term) const;

    const std::string& term(TermId id) const;

    bool has_role(TermId id, Role role) const;
    void add_role(TermId id, Role role);

    bool contains(TermId id) const { return id < terms_.size(); }
    std::size_t size() const { return terms_.size(); }

private:
    std::deque<std::string> terms_; // deque: string references stay valid on append
    std::vector<unsigned> roles_;
    std::unordered_map<std::string_view, TermId> index_;
};

} // namespace dkb
