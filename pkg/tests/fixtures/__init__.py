# Fixtures package for organized test configuration
