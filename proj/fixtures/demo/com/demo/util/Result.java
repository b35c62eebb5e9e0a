package com.demo.util;

import java.util.function.Function;

public final class Result<T> {
    private final T value;
    private final String error;

    private Result(T value, String error) {
        this.value = value;
        this.error = error;
    }

    public static <T> Result<T> success(T value) {
        return new Result<>(value, null);
    }

    public static <T> Result<T> failure(String error) {
        return new Result<>(null, error);
    }

    public boolean ok() {
        return error == null;
    }

    public T get() {
        if (!ok()) {
            throw new IllegalStateException(error);
        }
        return value;
    }

    public String error() {
        return error;
    }

    public <R> Result<R> map(Function<? super T, ? extends R> f) {
        return ok() ? success(f.apply(value)) : failure(error);
    }
}
