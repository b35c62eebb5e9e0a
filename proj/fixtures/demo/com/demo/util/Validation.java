package com.demo.util;

import java.util.ArrayList;
import java.util.List;

public class Validation {
    private final List<String> errors = new ArrayList<>();

    public Validation require(boolean condition, String message) {
        if (!condition) {
            errors.add(message);
        }
        return this;
    }

    public Validation notBlank(String value, String field) {
        return require(!Strings.isBlank(value), field + " must not be blank");
    }

    public Validation range(int value, int lo, int hi, String field) {
        return require(value >= lo && value <= hi, field + " out of range");
    }

    public boolean valid() {
        return errors.isEmpty();
    }

    public List<String> errors() {
        return errors;
    }
}
