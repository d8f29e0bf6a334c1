/*
 * Copyright 2026 The biphoton Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The acceptance suite must notice a wrong constant.

#include "biphoton/acceptance.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

using namespace biphoton;

namespace {

const CriterionResult& find(const AcceptanceSummary& s, const std::string& id) {
    for (const auto& c : s.criteria) {
        if (c.id == id) return c;
    }
    FAIL("no criterion " << id);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("tampered forward splitter fails the linear criteria", "[acceptance]") {
    AcceptanceOptions o;
    o.samples = 5;
    o.linear_forward_t = std::sqrt(0.5);
    const auto s = run_acceptance(o);
    CHECK_FALSE(s.all_passed());
    CHECK_FALSE(find(s, "C1").passed);
    CHECK_FALSE(find(s, "C3").passed);
    CHECK(find(s, "C2").passed);
    CHECK(find(s, "C4").passed);
    CHECK(find(s, "C6").passed);
    CHECK(format_line(find(s, "C1")).rfind("[FAIL] C1 linear forward map", 0) == 0);
}

TEST_CASE("tampered inverse splitter fails the inverse criteria", "[acceptance]") {
    AcceptanceOptions o;
    o.samples = 5;
    o.linear_inverse.t3 = 0.5;
    const auto s = run_acceptance(o);
    CHECK(find(s, "C1").passed);
    CHECK_FALSE(find(s, "C2").passed);
    CHECK_FALSE(find(s, "C3").passed);
}

TEST_CASE("tampered Kerr splitter fails the Kerr criteria", "[acceptance]") {
    AcceptanceOptions o;
    o.samples = 5;
    o.kerr_forward_t = 0.6;
    const auto s = run_acceptance(o);
    CHECK_FALSE(find(s, "C4").passed);
    CHECK_FALSE(find(s, "C6").passed);
    CHECK(find(s, "C5").passed);
}

TEST_CASE("summary JSON lists every criterion", "[acceptance]") {
    AcceptanceOptions o;
    o.samples = 2;
    const auto s = run_acceptance(o);
    const auto j = to_json(s);
    CHECK(j["criteria"].size() == s.criteria.size());
    CHECK(j["passed"].get<bool>() == s.all_passed());
}
