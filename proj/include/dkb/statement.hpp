// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include "dkb/term_dictionary.hpp"

namespace dkb {

/// One co-occurrence statement (subject, link, object) observed in a source
/// document, with an occurrence weight. Stored statements have count > 0;
/// an absent statement counts as 0.
struct Statement {
    TermId subject = 0;
    TermId link = 0;
    TermId object = 0;
    TermId provenance = 0;
    double count = 1.0;

    friend bool operator==(const Statement&, const Statement&) = default;
};

} // namespace dkb
