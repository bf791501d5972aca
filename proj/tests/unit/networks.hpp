#pragma once

#include <random>
#include <vector>

#include "reclab/tree_networks.hpp"

namespace testgen {

using reclab::trees::ConductanceNetwork;

inline ConductanceNetwork random_network(std::mt19937_64& rng, int max_depth, int max_vertices) {
  std::uniform_int_distribution<int> num(1, 9);
  std::vector<int> parent{-1};
  std::vector<int> level{0};
  std::vector<reclab::Rational> edge{reclab::Rational(0)};
  while (static_cast<int>(parent.size()) < max_vertices) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(parent.size()) - 1);
    int p = pick(rng);
    if (level[static_cast<std::size_t>(p)] >= max_depth) continue;
    parent.push_back(p);
    level.push_back(level[static_cast<std::size_t>(p)] + 1);
    edge.emplace_back(num(rng), num(rng));
  }
  return reclab::trees::explicit_network(parent, edge);
}

/// Every edge has conductance 1: c_n = 2^n / (2^n - 1).
inline ConductanceNetwork unit_binary_class() {
  ConductanceNetwork net;
  net.kind = ConductanceNetwork::Kind::Class;
  net.depth = 64;
  net.class_names = {"root", "body"};
  net.root_class = 0;
  net.root_child_class = {1, 1};
  net.root_edge = {1, 1};
  net.child_class = {{1, 1}, {1, 1}};
  net.ratio = {{0, 0}, {1, 1}};
  return net;
}

}  // namespace testgen
