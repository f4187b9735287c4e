# Identity verification harness
