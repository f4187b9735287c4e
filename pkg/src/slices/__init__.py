# Slice domains, slice functions and slice operators
