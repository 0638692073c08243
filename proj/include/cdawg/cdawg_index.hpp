#pragma once

#include "cdawg/cdawg.hpp"
#include "cdawg/index.hpp"
#include "cdawg/level_ancestor.hpp"
#include "cdawg/op_counter.hpp"
#include "cdawg/ordered_dag.hpp"
#include "cdawg/query.hpp"
#include "cdawg/serialize.hpp"
#include "cdawg/slp.hpp"
#include "cdawg/suffix_array.hpp"
#include "cdawg/suffix_tree.hpp"
#include "cdawg/text.hpp"
