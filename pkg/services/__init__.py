# Services package: corpus loading, verify suites and benchmarks
