# Core package: shared infrastructure (event bus)
