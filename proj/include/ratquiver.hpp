#pragma once

#include "ratquiver/error.hpp"
#include "ratquiver/hilbert.hpp"
#include "ratquiver/io.hpp"
#include "ratquiver/matrix.hpp"
#include "ratquiver/quad_ext.hpp"
#include "ratquiver/quiver.hpp"
#include "ratquiver/rational.hpp"
#include "ratquiver/roots.hpp"
#include "ratquiver/species.hpp"
#include "ratquiver/split_reps.hpp"
#include "ratquiver/wild_lab.hpp"
