#pragma once

#include "qpart/error.hpp"
#include "qpart/params.hpp"
#include "qpart/series.hpp"
#include "qpart/partitions.hpp"
#include "qpart/domains.hpp"
#include "qpart/bijections.hpp"
#include "qpart/identities.hpp"
#include "qpart/dsl.hpp"
