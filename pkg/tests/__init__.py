# Tests for hoarith
