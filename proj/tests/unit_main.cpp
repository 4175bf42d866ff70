// Test runner.  Suites are selected with doctest's -ts=<suite> flag; the
// CMake test list registers one invocation per suite.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
