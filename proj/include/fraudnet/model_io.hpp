#pragma once

#include <iosfwd>
#include <string>

#include "fraudnet/network.hpp"

namespace fraudnet {

// Text model format, version 1:
//
//   fraudnet-network 1
//   layers <count>
//   layer <in_dim> <out_dim> <activation>     (one per layer)
//   ...row-major weights then biases per layer, 17 significant digits...
//
// Values round-trip bit for bit, so a reloaded model predicts identically.
inline constexpr int kModelFormatVersion = 1;

void save_network(const NetworkParams& net, std::ostream& os);
NetworkParams load_network(std::istream& is);

void save_network_file(const NetworkParams& net, const std::string& path);
NetworkParams load_network_file(const std::string& path);

}  // namespace fraudnet
