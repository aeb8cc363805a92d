// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#include "dkb/term_dictionary.hpp"
#include "dkb/error.hpp"

namespace dkb {

TermId TermDictionary::intern(std::string_view term, Role role) {
    auto it = index_.find(term);
    if (it != index_.end()) {
        roles_[it->second] |= role_bit(role);
        return it->second;
    }
    TermId id = static_cast<TermId>(terms_.size());
    terms_.emplace_back(term);
    roles_.push_back(role_bit(role));
    index_.emplace(std::string_view(terms_.back()), id);
    return id;
}

std::optional<TermId> TermDictionary::find(std::string_view term) const {
    auto it = index_.find(term);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const std::string& TermDictionary::term(TermId id) const {
    if (id >= terms_.size()) {
        throw StructuralError("term id " + std::to_string(id) + " is not in the dictionary");
    }
    return terms_[id];
}

bool TermDictionary::has_role(TermId id, Role role) const {
    return id < roles_.size() && (roles_[id] & role_bit(role)) != 0;
}

void TermDictionary::add_role(TermId id, Role role) {
    if (id >= roles_.size()) {
        throw StructuralError("term id " + std::to_string(id) + " is not in the dictionary");
    }
    roles_[id] |= role_bit(role);
}

} // namespace dkb
