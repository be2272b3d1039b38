#pragma once

#include "bookcover/bigint.hpp"
#include "bookcover/book.hpp"
#include "bookcover/cover.hpp"
#include "bookcover/cover_matrix.hpp"
#include "bookcover/errors.hpp"
#include "bookcover/integer_homology.hpp"
#include "bookcover/perm_group.hpp"
#include "bookcover/permutation.hpp"
#include "bookcover/presentation.hpp"
#include "bookcover/quotient.hpp"
#include "bookcover/rs_oracle.hpp"
#include "bookcover/schreier.hpp"
#include "bookcover/tower.hpp"
#include "bookcover/words.hpp"

//! bookcover: exact first-homology torsion of finite regular covers of
//! books of I-bundles, with an independent rewriting oracle.
namespace bookcover {}
