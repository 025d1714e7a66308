// Resource caps. Exceeding a cap raises ResourceCapError; nothing is ever
// truncated silently. Library-level defaults are conservative; the CLI and
// the acceptance suite use cli_default_caps(), sized so that every
// acceptance computation fits (the largest is the order-46080 rose symmetry
// group and degree-3 bar chains for groups of order <= 50).

#pragma once

namespace homstab {

struct Caps {
  long long max_group_order = 10'000;
  long long max_bar_basis = 120'000;   // admits (|G|-1)^3 for |G| <= 50
  long long max_simplices = 1'000'000;
  int max_graph_edges = 16;
  long long max_torsion_enum = 1'000'000;
};

inline Caps cli_default_caps() {
  Caps c;
  c.max_group_order = 50'000;
  return c;
}

}  // namespace homstab
