package com.demo.model;

public interface Identifiable {
    String getId();
}
