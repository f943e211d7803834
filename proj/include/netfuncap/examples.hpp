#pragma once

#include <string>

#include "netfuncap/network.hpp"

namespace netfuncap::examples {

/// sigma_1 -> rho.
NetworkSpec single_edge();

/// Reverse butterfly: s1->n1, s1->n4, s2->n2, s2->n4, n4->n3, n3->n1, n3->n2,
/// n1->rho, n2->rho.
NetworkSpec reverse_butterfly();

/// Line s1 -> s2 -> ... -> s_s -> rho, every node a source.
NetworkSpec line(int sources);

/// The three-source line (N3).
inline NetworkSpec line3() { return line(3); }

/// Diamond: s3->s1, s3->s2, s1->rho, s2->rho.
NetworkSpec diamond();

/// N_{M,L}: sources s1..sM each with one edge to rho and L parallel edges to
/// relay s0, which has L parallel edges to rho.
NetworkSpec relay_network(int sources, int parallel);

}  // namespace netfuncap::examples
