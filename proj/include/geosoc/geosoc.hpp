#pragma once

#include "geosoc/balltree.hpp"
#include "geosoc/bounds.hpp"
#include "geosoc/core.hpp"
#include "geosoc/graph_analysis.hpp"
#include "geosoc/ilp.hpp"
#include "geosoc/mrgq.hpp"
#include "geosoc/oracle.hpp"
#include "geosoc/rtree.hpp"
#include "geosoc/search.hpp"
#include "geosoc/ssgq.hpp"
