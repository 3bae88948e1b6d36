#pragma once

#include "mdiag/class_combinatorics.hpp"
#include "mdiag/diagram_file.hpp"
#include "mdiag/error.hpp"
#include "mdiag/finite_group.hpp"
#include "mdiag/lab.hpp"
#include "mdiag/marked_diagram.hpp"
#include "mdiag/partition.hpp"
#include "mdiag/prime_field.hpp"
#include "mdiag/report.hpp"
#include "mdiag/root_system.hpp"
#include "mdiag/sl_matrix.hpp"
#include "mdiag/theorem_checker.hpp"
