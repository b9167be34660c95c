#pragma once

#include "chtrace/algebra_spec.hpp"
#include "chtrace/identities.hpp"
#include "chtrace/kernel_checks.hpp"
#include "chtrace/mat2.hpp"
#include "chtrace/polynomial.hpp"
#include "chtrace/rational.hpp"
#include "chtrace/registry.hpp"
#include "chtrace/report.hpp"
#include "chtrace/ring.hpp"
#include "chtrace/verifier.hpp"
