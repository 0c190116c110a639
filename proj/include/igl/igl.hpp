#pragma once

// Umbrella header: the whole proof toolkit.

#include "igl/errors.hpp"
#include "igl/formula.hpp"
#include "igl/multiset.hpp"
#include "igl/sequent.hpp"
#include "igl/text.hpp"
#include "igl/tree.hpp"
#include "igl/rules.hpp"
#include "igl/proof.hpp"
#include "igl/cyclic.hpp"
#include "igl/semantics.hpp"
#include "igl/transform.hpp"
#include "igl/translate.hpp"
#include "igl/proofdoc.hpp"
