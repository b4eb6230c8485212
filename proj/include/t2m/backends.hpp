// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "t2m/bdd.hpp"
#include "t2m/kgraph.hpp"
#include "t2m/textprep.hpp"

namespace t2m::backends {

// spec: "pattern" or an http(s) endpoint URL.
std::unique_ptr<kgraph::RelationExtractor> make_relation_extractor(const std::string& spec);

// spec: "pattern" or an http(s) endpoint URL. The prompt template file is
// rendered per context sentence ({input} placeholder) for HTTP backends.
std::unique_ptr<bdd::AttributeExtractor> make_attribute_extractor(
    const std::string& spec, const std::string& prompt_template_path = "");

// spec: "rule" or an http(s) endpoint URL.
std::unique_ptr<textprep::CoreferenceResolver> make_coref_resolver(const std::string& spec);

}  // namespace t2m::backends
