#pragma once

#include "cflobdd/apply.hpp"
#include "cflobdd/construct.hpp"
#include "cflobdd/distribution.hpp"
#include "cflobdd/kernel.hpp"
#include "cflobdd/linalg.hpp"
#include "cflobdd/manager.hpp"
#include "cflobdd/quantum.hpp"
#include "cflobdd/value.hpp"
