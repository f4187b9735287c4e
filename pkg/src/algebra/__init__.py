# Quaternion algebra
