# Complex special functions
