#pragma once

#include "xxring/error.hpp"
#include "xxring/matrix.hpp"
#include "xxring/eigen.hpp"
#include "xxring/model.hpp"
#include "xxring/thermal.hpp"
#include "xxring/entanglement.hpp"
#include "xxring/oracle.hpp"
#include "xxring/sweep.hpp"
