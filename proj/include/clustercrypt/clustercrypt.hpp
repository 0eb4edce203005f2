#pragma once

#include "clustercrypt/crypto.hpp"
#include "clustercrypt/exchange_graph.hpp"
#include "clustercrypt/root_system.hpp"
#include "clustercrypt/security.hpp"
#include "clustercrypt/selftest.hpp"
#include "clustercrypt/wire.hpp"
