#pragma once

#include <string>

#include "cubeplan/cube_complex.hpp"
#include "cubeplan/pip.hpp"
#include "cubeplan/planner.hpp"
#include "cubeplan/reconfig.hpp"

namespace cubeplan {

/// JSON text forms. Emission is normalized (sorted elements/pairs, fixed key
/// order, two-space indent, trailing newline) so identical values serialize
/// byte-identically. Parsers throw std::invalid_argument on malformed input.

// {"elements":[...], "covers":[[a,b],...], "inconsistent":[[p,q],...]}
std::string pip_to_json(const Pip& p);
Pip pip_from_json(const std::string& text);

// {"vertices":[...], "cubes":[{"verts":[...]},...], "root":id}
std::string complex_to_json(const CubeComplex& c);
CubeComplex complex_from_json(const std::string& text);

// {"graph":{"vertices":[...],"edges":[[a,b],...]}, "alphabet":[...],
//  "generators":[{"support":[...],"trace":[...],"local0":{...},"local1":{...}}],
//  "seed":{...}}
std::string system_to_json(const ReconfigSystem& sys);
ReconfigSystem system_from_json(const std::string& text);

// {"type":..., "n":..., "start":{"n":..,"verticals":[..]}, "goal":...,
//  "metric":..., "steps":[[move,...],...], "length":k}
std::string plan_to_json(const Plan& plan);
Plan plan_from_json(const std::string& text);

/// CSV rows "dim,count" with a header line.
std::string fvector_csv(const std::vector<std::size_t>& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cubeplan
