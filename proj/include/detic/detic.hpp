#pragma once

#include "detic/field.hpp"
#include "detic/matrix.hpp"
#include "detic/linalg.hpp"
#include "detic/decomposition.hpp"
#include "detic/region.hpp"
#include "detic/channel.hpp"
#include "detic/errors.hpp"
#include "detic/ratesplit.hpp"
#include "detic/netcode.hpp"
#include "detic/oracle.hpp"
#include "detic/suites.hpp"
#include "detic/io.hpp"
#include "detic/cli.hpp"
