#pragma once

#include "drc/render.hpp"

#include <string>

namespace drc::testing {

std::string fixture_path(const std::string& name);
SchemaPtr beers();
SchemaPtr beers_freq();
Query fixture_query(const std::string& file, const SchemaPtr& schema);
// Q_B - Q_A, normalized.
Query diff_ba();
// Q_2B - Q_2A, normalized.
Query diff_q2();
GroundInstance k0();

// Instances of the running example over diff_ba()'s schema, nulls numbered in
// order of appearance.
CInstance instance_i0();
CInstance instance_i1();
CInstance instance_third();  // d1 LIKE 'Eve%', ¬(d1 LIKE 'Eve %'), ¬Likes(d2,b1), p1 < p2
CInstance instance_i2();
// The seven listed instances for Q_2B - Q_2A over beers_freq().
std::vector<CInstance> case_study_q2();

// Builds an instance from text: one tuple or condition per line, e.g.
//   Serves(x1, b1, p1)
//   p1 > p2
//   d1 LIKE 'Eve%'
//   not d1 LIKE 'Eve %'
//   not Likes(d2, b1)
// Identifiers are nulls of the position's domain; quoted strings and numbers are
// constants. FK closure adds the anchoring rows.
CInstance build_instance(const SchemaPtr& schema, const std::string& text);

}  // namespace drc::testing
