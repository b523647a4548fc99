#pragma once

#include "psi/instance.hpp"

namespace psi {

// The built-in psi-calculi. Registry keys: pi, polyadic, polysync,
// fusion, constraint, crypto, pool.
InstancePtr pi_instance();
InstancePtr polyadic_pi_instance();
InstancePtr poly_sync_instance();
InstancePtr fusion_instance();
InstancePtr constraint_instance();
InstancePtr crypto_instance();
InstancePtr channel_pool_instance();

InstancePtr make_instance(const std::string& key);
std::vector<std::string> instance_keys();

}  // namespace psi
