#pragma once

#include <string>
#include <string_view>

#include "subsum/group.hpp"
#include "subsum/group_set.hpp"
#include "subsum/partition.hpp"
#include "subsum/sequence.hpp"

namespace subsum {

// Parsers for the text formats the types emit. Terms in sequences and
// partitions are joined by a middle dot; '*' is accepted as an ASCII
// stand-in. All throw ErrorKind::Parse on malformed input.

// "2,4"
GroupPtr parse_group(std::string_view text);
// "(1,3)"; residues are reduced modulo the factor orders.
Element parse_element(const GroupPtr& g, std::string_view text);
// "{(0,0),(1,1)}"
GroupSet parse_set(const GroupPtr& g, std::string_view text);
// "(0)^[2]·(1)" or "[]"
GSequence parse_sequence(const GroupPtr& g, std::string_view text);
// "{(0)}·{(0),(1)}"
SetPartition parse_partition(const GroupPtr& g, std::string_view text);

}  // namespace subsum
