# Fractional calculus of complex order
